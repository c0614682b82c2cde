import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_mgn.exact import (
    InconsistentSystemError,
    Polynomial,
    QuasiPolynomial,
    RankDeficientError,
    bernoulli,
    dumps_polynomial,
    fraction_str,
    polynomial_from_json,
    polynomial_to_json,
    solve_linear_exact,
    to_fraction,
)
from lattice_mgn.known_polynomials import REFERENCE_ROWS


def table_qp(g, n):
    return QuasiPolynomial(g, n, {k: p for (gg, nn, k), p in REFERENCE_ROWS.items() if (gg, nn) == (g, n)})


def test_fractions_are_reduced():
    x = to_fraction(Fraction(6, -4))
    assert (x.numerator, x.denominator) == (-3, 2)
    assert fraction_str(Fraction(4, 2)) == "2"
    assert fraction_str(Fraction(-7, 32)) == "-7/32"


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_polynomial_drops_zero_terms():
    p = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): Fraction(1)}
    assert (p - p).is_zero()
    assert (p - p).degree == -1


def test_degree_and_arithmetic():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.degree == 2
    assert (p * Fraction(1, 2)).coefficient((2, 0)) == Fraction(1, 2)


def test_embed_sets_missing_slots_to_zero():
    p = Polynomial(3, {(1, 0, 0): 1, (0, 0, 1): 2, (0, 0, 0): 5})
    q = p.embed(2, [1, 0, None])
    assert q == Polynomial(2, {(0, 1): 1, (0, 0): 5})


def test_substitute():
    p = Polynomial(2, {(2, 1): 3, (0, 0): 1})
    assert p.substitute(0, 2) == Polynomial(1, {(1,): 12, (0,): 1})


def test_format_is_graded_lex():
    p = Polynomial(2, {(0, 0): 1, (1, 0): 2, (0, 1): -1, (1, 1): Fraction(1, 3)})
    assert p.format("b", 2) == "1/3*b1^2*b2^2 + 2*b1^2 - b2^2 + 1"


def test_evaluate_table_rows():
    assert table_qp(0, 4).evaluate((2, 2, 2, 2)) == 6
    assert table_qp(1, 2).evaluate((2, 0)) == Fraction(11, 12)
    assert table_qp(1, 2).evaluate((1, 2)) == 0


def test_evaluate_rejects_bad_input():
    qp = table_qp(0, 4)
    with pytest.raises(ValueError):
        qp.evaluate((1, 2, 3))
    with pytest.raises(ValueError):
        qp.evaluate((-2, 2, 2, 2))


def test_odd_coset_must_vanish():
    with pytest.raises(ValueError):
        QuasiPolynomial(0, 3, {1: Polynomial.constant(3, 1)})
    qp = QuasiPolynomial(0, 3, {0: Polynomial.constant(3, 1)})
    assert qp.cosets[1].is_zero() and qp.cosets[3].is_zero()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=5, max_size=5), st.permutations(range(5)))
def test_evaluation_is_symmetric_and_parity_vanishing(b, perm):
    qp = table_qp(0, 5)
    value = qp.evaluate(b)
    assert qp.evaluate([b[i] for i in perm]) == value
    if sum(b) % 2:
        assert value == 0


def test_coset_is_block_symmetric():
    qp = table_qp(1, 3)
    p = qp.cosets[2]
    assert p.permute([1, 0, 2]) == p
    assert p.permute([2, 1, 0]) != p


exponents = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(tuple)
coefs = st.fractions(max_denominator=10**6).filter(lambda c: c != 0)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(exponents, coefs, max_size=8))
def test_json_round_trip(terms):
    p = Polynomial(3, terms)
    doc = polynomial_to_json(p, g=0, n=3, k=0)
    assert list(doc) == ["g", "n", "k", "terms"]
    assert polynomial_from_json(doc) == p
    text = dumps_polynomial(p, g=0, n=3, k=0)
    assert dumps_polynomial(polynomial_from_json(json.loads(text)), g=0, n=3, k=0) == text


def test_quasi_polynomial_json_round_trip():
    qp = table_qp(0, 5)
    assert QuasiPolynomial.from_json(qp.to_json()) == qp
    assert qp.coset_json(2)["terms"][-1] == {"exp": [0, 0, 0, 0, 0], "coef": "19/16"}


def test_solve_identity_and_small_systems():
    assert solve_linear_exact([[1, 0], [0, 1]], [3, 4]) == [3, 4]
    assert solve_linear_exact([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    # x^2 through nodes 1, 2, 3
    assert solve_linear_exact([[1, 1, 1], [1, 2, 4], [1, 3, 9]], [1, 4, 9]) == [0, 0, 1]


def test_solve_reports_rank_deficiency():
    with pytest.raises(RankDeficientError) as err:
        solve_linear_exact([[1, 2, 3], [2, 4, 7]], [1, 2])
    assert err.value.columns == [1]


def test_solve_rejects_inconsistent_overdetermined():
    assert solve_linear_exact([[1], [2]], [1, 2]) == [1]
    with pytest.raises(InconsistentSystemError):
        solve_linear_exact([[1], [2]], [1, 3])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n),
                        st.lists(st.integers(-9, 9), min_size=n, max_size=n))))
def test_solve_reproduces_rhs(system):
    matrix, rhs = system
    try:
        x = solve_linear_exact(matrix, rhs)
    except (RankDeficientError, InconsistentSystemError):
        return
    assert [sum(Fraction(a) * v for a, v in zip(row, x)) for row in matrix] == rhs


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(7) == 0


@pytest.mark.parametrize("m", range(1, 25))
def test_bernoulli_recurrence(m):
    assert sum(comb(m + 1, j) * bernoulli(j) for j in range(m + 1)) == 0
