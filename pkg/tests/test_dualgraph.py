import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_mgn.dualgraph import (
    DualGraph,
    MissingVertexPolynomialError,
    chi_compactified_via_strata,
    enumerate_dual_graphs,
    invert_state_sum,
    state_sum,
    state_sum_nbar,
)
from lattice_mgn.euler import chi_open
from lattice_mgn.exact import Polynomial
from lattice_mgn.known_polynomials import REFERENCE_ROWS
from lattice_mgn.recursion import levels_upto


def squares(n):
    return [Polynomial.variable(n, i) for i in range(n)]


def test_small_enumerations():
    (G,) = enumerate_dual_graphs(0, 3)
    assert G.aut_order == 1 and not G.edges
    assert sorted(G.aut_order for G in enumerate_dual_graphs(1, 1)) == [1, 2]
    graphs = enumerate_dual_graphs(1, 2)
    assert len(graphs) == 5
    assert sorted(G.aut_order for G in graphs) == [1, 1, 2, 2, 2]


@pytest.mark.parametrize("n,count", [(3, 1), (4, 4), (5, 26), (6, 236), (7, 2752)])
def test_genus_zero_strata_counts(n, count):
    assert len(enumerate_dual_graphs(0, n)) == count


def test_aut_order_examples():
    assert DualGraph((0,), (0,), ((0, 0),)).aut_order == 2
    assert DualGraph((0, 0), (0, 1), ((0, 1), (0, 1))).aut_order == 2
    assert DualGraph((2,), (0, 0, 0), ()).aut_order == 1
    # two loops on one vertex: swap them and flip each
    assert DualGraph((0,), (0,), ((0, 0), (0, 0))).aut_order == 8


@pytest.mark.parametrize("g,n", levels_upto(4))
def test_graph_invariants(g, n):
    graphs = enumerate_dual_graphs(g, n)
    keys = {G.canonical_key for G in graphs}
    assert len(keys) == len(graphs)
    for G in graphs:
        assert G.is_connected() and G.is_stable() and G.genus == g and G.n == n


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_relabelling_vertices_preserves_class(seed):
    rng = random.Random(seed)
    G = rng.choice(enumerate_dual_graphs(1, 3) + enumerate_dual_graphs(2, 1))
    perm = list(range(G.n_vertices))
    rng.shuffle(perm)
    H = DualGraph(tuple(G.genera[perm.index(v)] for v in range(G.n_vertices)),
                  tuple(perm[t] for t in G.tails),
                  tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in G.edges)))
    assert H.canonical_key == G.canonical_key
    assert H.aut_order == G.aut_order


def test_json_listing():
    doc = [G.to_json() for G in enumerate_dual_graphs(1, 1)]
    assert {"vertices": [{"genus": 1, "tails": [1]}], "edges": [], "autOrder": 1} in doc
    assert {"vertices": [{"genus": 0, "tails": [1]}], "edges": [[0, 0]], "autOrder": 2} in doc


@pytest.fixture(scope="module")
def inverted(store):
    return store.n


def test_inversion_examples(inverted):
    x = squares(1)[0]
    assert inverted[(1, 1)].cosets[0] == (x - 4) * Fraction(1, 48)
    b1, b2, b3, b4 = squares(4)
    assert inverted[(0, 4)].cosets[0] == (b1 + b2 + b3 + b4) * Fraction(1, 4) - 1
    b1, b2 = squares(2)
    want = (b1 * b1 + b2 * b2 + b1 * b2 * 2 - b1 * 12 - b2 * 12 + 32) * Fraction(1, 384)
    assert inverted[(1, 2)].cosets[0] == want
    assert inverted[(0, 3)].cosets[0] == Polynomial.constant(3, 1)
    assert inverted[(1, 1)].constant_term() == Fraction(-1, 12)


def test_state_sum_examples(inverted):
    assert state_sum_nbar(1, 2, inverted).cosets[0] == REFERENCE_ROWS[(1, 2, 0)]
    assert state_sum_nbar(0, 3, inverted).cosets[0] == Polynomial.constant(3, 1)
    nbar11 = state_sum_nbar(1, 1, inverted)
    assert nbar11.cosets[0] == REFERENCE_ROWS[(1, 1, 0)]
    assert nbar11.evaluate((2,)) == Fraction(1, 2)


def test_state_sum_round_trip(store):
    for key, nbar in store.nbar.items():
        assert state_sum(*key, store.n) == nbar


def test_inversion_needs_lower_levels(store):
    partial = {(0, 3): store.n[(0, 3)]}
    with pytest.raises(MissingVertexPolynomialError):
        invert_state_sum(1, 2, store.nbar[(1, 2)], partial)


def test_chi_via_strata():
    assert chi_compactified_via_strata(0, 4, chi_open) == 2
    assert chi_compactified_via_strata(1, 1, chi_open) == Fraction(5, 12)
    assert chi_compactified_via_strata(0, 5, chi_open) == 7
