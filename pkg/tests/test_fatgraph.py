from fractions import Fraction
from math import factorial, lcm

import pytest

from lattice_mgn.fatgraph import (
    CensusInfeasibleError,
    FatGraph,
    census,
    census_n,
    census_n_pointed,
    fixed_point_free_involutions,
    isomorphism_classes,
    labeled_structures_bruteforce,
    labeled_structures_fixed_tau1,
)

SMALL = [
    (0, 3, (1, 1, 2)), (0, 3, (2, 2, 2)), (1, 1, (4,)), (1, 1, (6,)), (1, 2, (2, 2)),
    (1, 2, (3, 1)), (0, 4, (1, 1, 1, 1)), (0, 4, (1, 1, 2, 2)), (0, 3, (1, 1, 0)),
    (0, 3, (2, 2, 0)), (0, 4, (2, 2, 0, 0)), (0, 4, (2, 2, 2, 0)), (0, 3, (4, 0, 0)),
    (0, 4, (6, 0, 0, 0)), (1, 2, (4, 0)), (1, 1, (2,)),
]


def test_census_examples():
    assert census_n(0, 3, (1, 1, 2)) == 1
    assert census_n(1, 1, (2,)) == 0
    assert census_n(1, 1, (4,)) == Fraction(1, 4)
    assert census_n(1, 2, (2, 2)) == 0


def test_pointed_examples():
    assert census_n_pointed(0, 3, (2, 2, 0)) == 1
    assert census_n_pointed(0, 4, (2, 2, 0, 0)) == 1
    assert census_n_pointed(0, 3, (1, 1, 0)) == 1


def test_odd_total_and_bounds():
    assert census_n(0, 3, (1, 1, 1)) == 0
    with pytest.raises(CensusInfeasibleError):
        census(0, 3, (6, 6, 4))
    assert census(0, 3, (6, 6, 4), max_half_edges=16).count == 1
    with pytest.raises(ValueError):
        census_n(0, 3, (2, 2, 0))
    with pytest.raises(ValueError):
        census(0, 3, (0, 0, 0))


def test_result_json():
    assert census(1, 1, (4,)).to_json() == {"count": "1/4", "structures": 6, "halfEdges": 4}


@pytest.mark.parametrize("g,n,b", SMALL)
def test_three_counting_routes_agree(g, n, b):
    res = census(g, n, b)
    assert labeled_structures_bruteforce(g, n, b) == res.structures
    assert labeled_structures_fixed_tau1(g, n, b) == res.structures
    assert res.count == Fraction(res.structures, factorial(res.half_edges))


@pytest.mark.parametrize("g,n,b", SMALL)
def test_orbit_counting_identity(g, n, b):
    classes = isomorphism_classes(g, n, b)
    assert sum(Fraction(1, aut) for _, aut in classes) == census(g, n, b).count
    for fg, _ in classes:
        assert fg.is_connected() and fg.genus == g


def test_census_denominator_divides_aut_lcm():
    classes = isomorphism_classes(1, 1, (6,))
    common = lcm(*(aut for _, aut in classes))
    assert (census_n(1, 1, (6,)) * common).denominator == 1


def test_involution_count():
    assert sum(1 for _ in fixed_point_free_involutions(6)) == 15


def test_fatgraph_validation_and_genus():
    theta = FatGraph((2, 3, 4, 5, 0, 1), (1, 0, 3, 2, 5, 4))
    assert theta.half_edges == 6
    with pytest.raises(ValueError):
        FatGraph((0, 1), (0, 1))
    loop = FatGraph((1, 0), (1, 0))
    assert loop.genus == 0 and len(loop.boundaries) == 2
