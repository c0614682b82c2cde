"""Reference compactified count polynomials for low levels.

Each entry is ``(g, n, k) -> Polynomial`` in the squared variables, odd
slots first.  ``m(...)`` is the monomial symmetric sum over all variables,
so ``m(2, 1)`` runs over ordered pairs ``i != j`` and ``m(1, 1)`` over
``i < j``.
"""
from __future__ import annotations

from fractions import Fraction as Q

from .exact import Polynomial
from .interpolation import orbit


def m(n: int, *pattern: int) -> Polynomial:
    return Polynomial(n, {e: 1 for e in orbit(tuple(pattern) + (0,) * (n - len(pattern)), 0)})


def x(n: int, *slots: int, power: int = 1) -> Polynomial:
    """Sum of ``x_i^power`` over the given 1-based slots."""
    out = Polynomial(n)
    for s in slots:
        e = [0] * n
        e[s - 1] = power
        out = out + Polynomial(n, {tuple(e): 1})
    return out


def one(n: int) -> Polynomial:
    return Polynomial.constant(n, 1)


def _rows() -> dict[tuple[int, int, int], Polynomial]:
    rows = {}
    rows[(0, 3, 0)] = one(3)
    rows[(0, 3, 2)] = one(3)
    rows[(1, 1, 0)] = (x(1, 1) + one(1) * 20) * Q(1, 48)
    rows[(0, 4, 0)] = (m(4, 1) + one(4) * 8) * Q(1, 4)
    rows[(0, 4, 2)] = (m(4, 1) + one(4) * 2) * Q(1, 4)
    rows[(0, 4, 4)] = (m(4, 1) + one(4) * 8) * Q(1, 4)
    rows[(1, 2, 0)] = (m(2, 2) + m(2, 1, 1) * 2 + m(2, 1) * 36 + one(2) * 192) * Q(1, 384)
    rows[(1, 2, 2)] = (m(2, 2) + m(2, 1, 1) * 2 + m(2, 1) * 36 + one(2) * 84) * Q(1, 384)
    quartic5 = m(5, 2) * Q(1, 32) + m(5, 1, 1) * Q(1, 8)
    rows[(0, 5, 0)] = quartic5 + m(5, 1) * Q(7, 8) + one(5) * 7
    rows[(0, 5, 2)] = quartic5 + x(5, 1, 2) * Q(5, 16) + x(5, 3, 4, 5) * Q(1, 8) + one(5) * Q(19, 16)
    rows[(0, 5, 4)] = quartic5 + x(5, 1, 2, 3, 4) * Q(5, 16) + x(5, 5) * Q(7, 8) + one(5) * Q(7, 8)
    sextic3 = m(3, 3) * Q(1, 4608) + m(3, 2, 1) * Q(1, 768) + m(3, 1, 1, 1) * Q(1, 384)
    rows[(1, 3, 0)] = (sextic3 + m(3, 2) * Q(13, 1152) + m(3, 1, 1) * Q(1, 24)
                       + m(3, 1) * Q(29, 144) + one(3) * Q(17, 12))
    rows[(1, 3, 2)] = (sextic3 + x(3, 1, 2, power=2) * Q(43, 4608) + x(3, 3, power=2) * Q(13, 1152)
                       + m(3, 1, 1) * Q(1, 24) + x(3, 1, 2) * Q(277, 4608) + x(3, 3) * Q(35, 576)
                       + one(3) * Q(81, 256))
    rows[(2, 1, 0)] = Polynomial(1, {(4,): Q(1, 1769472), (3,): Q(3, 40960), (2,): Q(133, 61440),
                                     (1,): Q(1087, 34560), (0,): Q(247, 1440)})
    rows[(0, 6, 0)] = (m(6, 3) * Q(1, 384) + m(6, 2, 1) * Q(3, 128) + m(6, 1, 1, 1) * Q(3, 32)
                       + m(6, 2) * Q(1, 6) + m(6, 1, 1) * Q(9, 16) + m(6, 1) * Q(109, 24) + one(6) * 34)
    return rows


REFERENCE_ROWS = _rows()
