from fractions import Fraction

import pytest

from lattice_mgn.exact import Polynomial
from lattice_mgn.interpolation import (
    VALIDATION_POINTS,
    FitValidationError,
    fit_coset,
    fit_level,
    monomial_basis,
    orbit,
    sample_grid,
)
from lattice_mgn.known_polynomials import REFERENCE_ROWS
from lattice_mgn.pipeline import pipeline_run
from lattice_mgn.recursion import EvaluationContext, nbar_base, nbar_value


def test_monomial_basis_examples():
    assert monomial_basis(1, 0, 1) == [(0,), (1,)]
    assert monomial_basis(2, 0, 2) == [(0, 0), (1, 0), (2, 0), (1, 1)]
    assert sorted(monomial_basis(3, 2, 1)) == [(0, 0, 0), (0, 0, 1), (1, 0, 0)]


def test_orbit_respects_blocks():
    assert orbit((1, 0, 2), 2) == [(0, 1, 2), (1, 0, 2)]


@pytest.mark.parametrize("g,n,k", [(0, 5, 2), (1, 3, 0), (2, 2, 2), (0, 4, 4)])
def test_sample_grid_shape(g, n, k):
    samples, checks = sample_grid(g, n, k)
    assert len(samples) == len(monomial_basis(n, k, 3 * g - 3 + n))
    assert len(checks) >= VALIDATION_POINTS
    for b in samples + checks:
        assert min(b) >= 1
        assert all(x % 2 for x in b[:k]) and not any(x % 2 for x in b[k:])
    assert not set(samples) & set(checks)


def test_sample_grid_rejects_odd_cosets():
    with pytest.raises(ValueError):
        sample_grid(0, 4, 1)


def test_fit_base_levels():
    qp = fit_level(0, 3, lambda b: nbar_base(0, 3, b))
    assert qp.cosets[0] == Polynomial.constant(3, 1) == qp.cosets[2]
    qp = fit_level(1, 1, lambda b: nbar_base(1, 1, b))
    assert qp.cosets[0] == REFERENCE_ROWS[(1, 1, 0)]


def test_fit_genus_two():
    polys = pipeline_run(2).nbar
    ctx = EvaluationContext(polys)
    qp = fit_level(2, 1, lambda b: nbar_value(2, 1, b, ctx))
    assert qp.cosets[0] == REFERENCE_ROWS[(2, 1, 0)]
    assert qp.degree == 4


def test_disjoint_grids_give_the_same_fit():
    polys = pipeline_run(2).nbar
    ctx = EvaluationContext(polys)

    def ev(b):
        return nbar_value(0, 5, b, ctx)
    first, used = fit_coset(0, 5, 2, ev)
    second, used2 = fit_coset(0, 5, 2, ev, avoid=used)
    assert not set(used) & set(used2)
    assert first == second == REFERENCE_ROWS[(0, 5, 2)]


def test_validation_catches_wrong_degree():
    # a degree-2 function cannot be fitted under the (1,1) degree bound of 1
    with pytest.raises(FitValidationError):
        fit_level(1, 1, lambda b: Fraction(b[0] ** 4) if b[0] % 2 == 0 else Fraction(0))
