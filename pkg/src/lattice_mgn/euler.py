"""Orbifold Euler characteristics of moduli spaces of curves.

Open values come from the Harer-Zagier formula (genus >= 1) and the
forgetful-map relation in genus 0.  Compactified values come from a
recursion in ``n`` seeded with one value per genus, normally the constant
terms of the fitted lattice count polynomials.  The generating function

    G(x, q) = sum chi(Mbar_{g,n+1}) x^n / n! q^g

satisfies a first-order PDE whose ``q^0`` and ``q^1`` parts give ODEs for
the series ``F_0`` and ``F_1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping

from .exact import bernoulli
from .recursion import is_stable
from .series import TruncatedSeries, invert, log1p, reciprocal, solve_first_order


class MissingSeedError(KeyError):
    pass


@lru_cache(maxsize=None)
def chi_open(g: int, n: int) -> Fraction:
    """``chi(M_{g,n})``."""
    if not is_stable(g, n):
        raise ValueError(f"({g}, {n}) is not stable")
    if g == 0:
        if n == 3:
            return Fraction(1)
        return (2 - (n - 1)) * chi_open(0, n - 1)
    return Fraction((-1) ** n * factorial(2 * g + n - 3)) * bernoulli(2 * g) / (2 * g * factorial(2 * g - 2))


@dataclass
class ChiTable:
    """Compactified Euler characteristics built from per-genus seeds ``chi(Mbar_{g,1})``.

    ``chi(Mbar_{0,1}) = 0`` and ``chi(Mbar_{0,2}) = 1`` are conventions;
    ``chi(Mbar_{g,0})`` is never used.
    """
    seeds: dict[int, Fraction] = field(default_factory=dict)
    closed: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.seeds = {int(g): Fraction(v) for g, v in self.seeds.items()}
        self.seeds.setdefault(0, Fraction(0))
        self.closed[(0, 1)] = Fraction(0)
        self.closed[(0, 2)] = Fraction(1)

    @property
    def max_genus(self) -> int:
        g = 0
        while g + 1 in self.seeds:
            g += 1
        return g

    def chi_closed(self, g: int, n: int) -> Fraction:
        if g < 0 or n < 1:
            raise ValueError(f"no compactified value is defined for ({g}, {n})")
        key = (g, n)
        if key in self.closed:
            return self.closed[key]
        if n == 1:
            if g not in self.seeds:
                raise MissingSeedError(f"no seed chi(Mbar_{{{g},1}})")
            value = self.seeds[g]
        else:
            value = self._step(g, n - 1)
        self.closed[key] = value
        return value

    def _step(self, g: int, n: int) -> Fraction:
        # chi(Mbar_{g,n+1}) from lower n and lower genus
        value = (2 - 2 * g - n) * self.chi_closed(g, n)
        if g >= 1:
            value += self.chi_closed(g - 1, n + 2) / 2
        return value + self.splitting_sum(g, n) / 2

    def splitting_sum(self, g: int, n: int) -> Fraction:
        """``sum_{h,k} C(n,k) chi(Mbar_{h,k+1}) chi(Mbar_{g-h,n-k+1})``."""
        total = Fraction(0)
        for h in range(g + 1):
            for k in range(n + 1):
                # chi(Mbar_{0,1}) = 0 kills these; skipping avoids self-reference
                if (h, k) == (0, 0) or (g - h, n - k) == (0, 0):
                    continue
                total += comb(n, k) * self.chi_closed(h, k + 1) * self.chi_closed(g - h, n - k + 1)
        return total


def chi_closed_recursive(g: int, n: int, seeds: Mapping[int, Fraction]) -> Fraction:
    return ChiTable(dict(seeds)).chi_closed(g, n)


def p3prime_sides(g: int, n: int, nbar_value, table: ChiTable) -> tuple[Fraction, Fraction]:
    """Both sides of ``Nbar_{g,n+1}(0,...,0,2) = chi-combination``."""
    lhs = nbar_value((0,) * n + (2,))
    rhs = table.splitting_sum(g, n) / 2
    if g >= 1:
        rhs += table.chi_closed(g - 1, n + 2) / 2
    return lhs, rhs


def p3prime_check(g: int, n: int, nbar_value, table: ChiTable) -> bool:
    lhs, rhs = p3prime_sides(g, n, nbar_value, table)
    return lhs == rhs


def _one_plus_x_minus(f: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(f.order, {(0,): 1, (1,): 1}) - f


def f0_series(order: int) -> TruncatedSeries:
    """Genus-0 generating series, from ``F' (1 + x - F) = F + 1``, ``F(0) = 0``."""
    def rhs(f):
        return (f + 1) * reciprocal(_one_plus_x_minus(f))
    return solve_first_order(rhs, 0, order)


def f0_series_by_inversion(order: int) -> TruncatedSeries:
    """``F_0`` as the compositional inverse of ``2F - (1 + F) ln(1 + F)``."""
    f = TruncatedSeries.x(order)
    return invert(2 * f - (1 + f) * log1p(f), order)


def f1_series(order: int) -> TruncatedSeries:
    """Genus-1 series from ``F_1' (1 + x - F_0) = F_1 (F_0' - 1) + F_0'' / 2``, ``F_1(0) = 5/12``."""
    f0 = f0_series(order + 2)
    d1 = f0.derivative()
    d2 = d1.derivative()
    denom = reciprocal(_one_plus_x_minus(f0).truncate(order))

    def rhs(f1):
        m = f1.order[0]
        return (f1 * (d1.truncate(m) - 1) + d2.truncate(m) * Fraction(1, 2)) * denom.truncate(m)
    return solve_first_order(rhs, Fraction(5, 12), order)


def generating_function(order_x: int, order_q: int, table: ChiTable) -> TruncatedSeries:
    """``G(x, q)`` through ``x^order_x q^order_q``."""
    if order_q > table.max_genus:
        raise MissingSeedError(f"q-order {order_q} needs seeds through genus {order_q}")
    coeffs = {(n, g): table.chi_closed(g, n + 1) / factorial(n)
              for n in range(order_x + 1) for g in range(order_q + 1)}
    return TruncatedSeries((order_x, order_q), coeffs)


def pde_residual(order_x: int, order_q: int, table: ChiTable) -> TruncatedSeries:
    """``G_x - (G + 1 - x G_x + G G_x + (q/2) G_xx - 2 q G_q)`` through the given orders."""
    G = generating_function(order_x + 2, order_q, table)
    Gx = G.derivative(0)
    Gxx = Gx.derivative(0)
    qGq = TruncatedSeries(G.order, {e: e[1] * c for e, c in G.coeffs.items()})
    rhs = G + 1 - Gx.shift(0) + G * Gx + Gxx.shift(1) * Fraction(1, 2) - qGq * 2
    return (Gx - rhs).truncate((order_x, order_q))
