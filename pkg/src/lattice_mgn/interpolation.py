"""Fit symmetric quasi-polynomials from exact point values.

On the coset with ``k`` odd arguments the unknown polynomial is invariant
under ``S_k x S_{n-k}``, so one coefficient is fitted per orbit of
monomials in the squared variables.  Samples are sorted within each parity
block, chosen greedily by increasing perimeter sum until the evaluation
matrix has full rank, and followed by extra validation points that must be
reproduced exactly.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import Callable, Iterable, Sequence

from .exact import Polynomial, QuasiPolynomial, RowEchelon, solve_linear_exact

log = logging.getLogger(__name__)

Evaluator = Callable[[tuple[int, ...]], Fraction]

VALIDATION_POINTS = 3
MAX_GRID_ROUNDS = 6


class FitValidationError(ArithmeticError):
    def __init__(self, g, n, k, point, expected, got):
        self.point = point
        super().__init__(f"N({g},{n}) coset k={k}: fit gives {got} at {point}, evaluator gives {expected}")


class GridRankError(ArithmeticError):
    pass


def partitions(total: int, parts: int, largest: int | None = None):
    """Non-increasing tuples of exactly ``parts`` non-negative ints summing to ``total``."""
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in partitions(total - first, parts - 1, first):
            yield (first,) + rest


def monomial_basis(n: int, k: int, degree_bound: int) -> list[tuple[int, ...]]:
    """One exponent vector per ``S_k x S_{n-k}`` orbit of total degree <= bound.

    Each representative is non-increasing within the odd block (first ``k``
    slots) and within the even block.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    basis = []
    for d in range(degree_bound + 1):
        for d1 in range(d + 1):
            for odd in partitions(d1, k):
                for even in partitions(d - d1, n - k):
                    basis.append(odd + even)
    return basis


def _distinct_perms(block: tuple[int, ...]) -> set[tuple[int, ...]]:
    return set(permutations(block))


def orbit(exponent: tuple[int, ...], k: int) -> list[tuple[int, ...]]:
    """All monomials in the ``S_k x S_{n-k}`` orbit of ``exponent``."""
    return sorted(a + b for a in _distinct_perms(exponent[:k]) for b in _distinct_perms(exponent[k:]))


def orbit_polynomial(exponent: tuple[int, ...], k: int) -> Polynomial:
    return Polynomial(len(exponent), {e: 1 for e in orbit(exponent, k)})


def candidate_points(n: int, k: int, max_value: int) -> list[tuple[int, ...]]:
    """Block-sorted parity-correct positive points, smallest sums first."""
    odd_vals = range(1, max_value + 1, 2)
    even_vals = range(2, max_value + 1, 2)
    pts = [o + e for o in combinations_with_replacement(odd_vals, k)
           for e in combinations_with_replacement(even_vals, n - k)]
    pts.sort(key=lambda p: (sum(p), max(p, default=0), p))
    return pts


def sample_grid(g: int, n: int, k: int, avoid: Iterable[Sequence[int]] = (),
                validation: int = VALIDATION_POINTS) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Return ``(samples, validation_points)`` for coset ``k``.

    ``samples`` has exactly as many points as there are basis orbits and its
    evaluation matrix is invertible.  Points in ``avoid`` are skipped, which
    lets two fits run on disjoint grids.
    """
    if k % 2:
        raise ValueError("odd cosets vanish and need no samples")
    basis = monomial_basis(n, k, 3 * g - 3 + n)
    orbits = [orbit(e, k) for e in basis]
    avoid = {tuple(p) for p in avoid}
    max_value = max(3, 2 * ((3 * g - 3 + n) // max(n, 1)) + 4)
    for _ in range(MAX_GRID_ROUNDS):
        echelon = RowEchelon(len(basis))
        samples, spare = [], []
        for pt in candidate_points(n, k, max_value):
            if pt in avoid:
                continue
            if echelon.rank < len(basis):
                sq = [x * x for x in pt]
                if echelon.add(_orbit_row(orbits, sq)):
                    samples.append(pt)
                    continue
            spare.append(pt)
            if echelon.rank == len(basis) and len(spare) >= validation:
                return samples, spare[:validation]
        max_value += 4
    raise GridRankError(f"could not find a unisolvent grid for N({g},{n}) coset k={k}")


def _orbit_row(orbits, squares) -> list[int]:
    row = []
    for mons in orbits:
        total = 0
        for mon in mons:
            term = 1
            for x, e in zip(squares, mon):
                if e:
                    term *= x**e
            total += term
        row.append(total)
    return row


def fit_coset(g: int, n: int, k: int, evaluator: Evaluator, avoid=()) -> tuple[Polynomial, dict]:
    """Fit one coset polynomial; also return every value that was sampled."""
    basis = monomial_basis(n, k, 3 * g - 3 + n)
    orbits = [orbit(e, k) for e in basis]
    samples, checks = sample_grid(g, n, k, avoid=avoid)
    values = {pt: evaluator(pt) for pt in samples}
    matrix = [_orbit_row(orbits, [x * x for x in pt]) for pt in samples]
    coeffs = solve_linear_exact(matrix, [values[pt] for pt in samples])
    poly = Polynomial(n, {mon: c for mons, c in zip(orbits, coeffs) for mon in mons})
    for pt in checks:
        expected = evaluator(pt)
        values[pt] = expected
        got = poly.evaluate([x * x for x in pt])
        if got != expected:
            raise FitValidationError(g, n, k, pt, expected, got)
    log.debug("fitted N(%d,%d) k=%d from %d samples", g, n, k, len(samples))
    return poly, values


def fit_level(g: int, n: int, evaluator: Evaluator, avoid=()) -> QuasiPolynomial:
    return fit_level_with_samples(g, n, evaluator, avoid)[0]


def fit_level_with_samples(g: int, n: int, evaluator: Evaluator, avoid=()):
    """Fit all even cosets; returns ``(quasi_polynomial, sampled_values)``."""
    cosets = {}
    values = {}
    for k in range(0, n + 1, 2):
        cosets[k], vals = fit_coset(g, n, k, evaluator, avoid)
        values.update(vals)
    return QuasiPolynomial(g, n, cosets), values
