"""Truncated power series in one or two variables with exact coefficients.

A series knows its truncation order per variable (the largest exponent
whose coefficient is known).  Coefficients past the order are unknown:
asking for one raises instead of returning zero.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exact import to_fraction


class SeriesOrderError(IndexError):
    pass


class TruncatedSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs: Mapping | None = None):
        if isinstance(order, int):
            order = (order,)
        self.order = tuple(order)
        if len(self.order) not in (1, 2):
            raise ValueError("only one or two variables are supported")
        clean = {}
        for exp, c in (coeffs or {}).items():
            exp = (exp,) if isinstance(exp, int) else tuple(exp)
            if len(exp) != len(self.order):
                raise ValueError(f"exponent {exp} has wrong length")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            if all(e <= o for e, o in zip(exp, self.order)):
                c = to_fraction(c)
                if c:
                    clean[exp] = c
        self.coeffs = clean

    @property
    def nvars(self) -> int:
        return len(self.order)

    @classmethod
    def from_list(cls, values) -> "TruncatedSeries":
        return cls(len(values) - 1, {(i,): v for i, v in enumerate(values)})

    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        return cls(order, {(1,): 1})

    def __getitem__(self, exp) -> Fraction:
        exp = (exp,) if isinstance(exp, int) else tuple(exp)
        if any(e > o for e, o in zip(exp, self.order)):
            raise SeriesOrderError(f"coefficient {exp} is beyond the truncation order {self.order}")
        if any(e < 0 for e in exp):
            return Fraction(0)
        return self.coeffs.get(exp, Fraction(0))

    def coefficients(self) -> list[Fraction]:
        """Dense coefficient list of a univariate series."""
        if self.nvars != 1:
            raise ValueError("coefficients() is for univariate series")
        return [self[i] for i in range(self.order[0] + 1)]

    def _grid(self, order=None):
        order = order or self.order
        if len(order) == 1:
            return [(i,) for i in range(order[0] + 1)]
        return [(i, j) for i in range(order[0] + 1) for j in range(order[1] + 1)]

    def _meet(self, other: "TruncatedSeries"):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return tuple(min(a, b) for a, b in zip(self.order, other.order))

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries(self.order, {(0,) * self.nvars: other})
        order = self._meet(other)
        return TruncatedSeries(order, {e: self[e] + other[e] for e in self._grid(order)})

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = to_fraction(other)
            return TruncatedSeries(self.order, {e: c * v for e, v in self.coeffs.items()})
        order = self._meet(other)
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if all(x <= o for x, o in zip(e, order)):
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
        return TruncatedSeries(order, out)

    __rmul__ = __mul__

    def shift(self, var: int = 0, by: int = 1) -> "TruncatedSeries":
        """Multiply by the ``var``-th variable to the power ``by``."""
        order = list(self.order)
        order[var] += by
        out = {}
        for e, c in self.coeffs.items():
            ne = list(e)
            ne[var] += by
            out[tuple(ne)] = c
        return TruncatedSeries(tuple(order), out)

    def derivative(self, var: int = 0) -> "TruncatedSeries":
        order = list(self.order)
        order[var] -= 1
        if order[var] < 0:
            raise SeriesOrderError("derivative of an order-0 series has no known coefficients")
        out = {}
        for e, c in self.coeffs.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return TruncatedSeries(tuple(order), out)

    def truncate(self, order) -> "TruncatedSeries":
        if isinstance(order, int):
            order = (order,)
        if any(o > s for o, s in zip(order, self.order)):
            raise SeriesOrderError("cannot truncate above the known order")
        return TruncatedSeries(order, self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"{c}*x^{e}" for e, c in sorted(self.coeffs.items()))
        return f"TruncatedSeries(order={self.order}, {terms or 0})"


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(x))`` for univariate series with ``inner(0) = 0``."""
    if outer.nvars != 1 or inner.nvars != 1:
        raise ValueError("composition is implemented for univariate series")
    if inner[0]:
        raise ValueError("inner series must have zero constant term")
    order = min(outer.order[0], inner.order[0])
    result = TruncatedSeries(order, {(0,): outer[0]})
    power = TruncatedSeries(order, {(0,): 1})
    inner = inner.truncate(order)
    for k in range(1, order + 1):
        power = power * inner
        if outer[k]:
            result = result + power * outer[k]
    return result


def log1p(series: TruncatedSeries) -> TruncatedSeries:
    """``ln(1 + F)`` for a univariate ``F`` with ``F(0) = 0``."""
    order = series.order[0]
    log_coeffs = {(k,): Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)}
    return compose(TruncatedSeries(order, log_coeffs), series)


def invert(series: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """Compositional inverse ``y(x)`` of ``x = series(y)``.

    Requires a zero constant term and a non-zero linear term.
    """
    if series.nvars != 1:
        raise ValueError("inversion is implemented for univariate series")
    order = series.order[0] if order is None else order
    if order > series.order[0]:
        raise SeriesOrderError("requested order exceeds the known order of the series")
    if series[0]:
        raise ValueError("series must vanish at 0")
    a1 = series[1]
    if not a1:
        raise ZeroDivisionError("series has zero linear term; it is not invertible")
    coeffs = {(1,): 1 / a1}
    for m in range(2, order + 1):
        trial = TruncatedSeries(m, coeffs)
        known = compose(series.truncate(m), trial)[m]
        coeffs[(m,)] = -known / a1
    return TruncatedSeries(order, coeffs)


def reciprocal(series: TruncatedSeries) -> TruncatedSeries:
    """``1 / series`` for a univariate series with non-zero constant term."""
    if series.nvars != 1:
        raise ValueError("reciprocal is implemented for univariate series")
    a0 = series[0]
    if not a0:
        raise ZeroDivisionError("series has zero constant term")
    order = series.order[0]
    out = [1 / a0]
    for m in range(1, order + 1):
        acc = sum(series[i] * out[m - i] for i in range(1, m + 1))
        out.append(-acc / a0)
    return TruncatedSeries.from_list(out)


def solve_first_order(rhs, initial, order: int) -> TruncatedSeries:
    """Power-series solution of ``F' = rhs(F)``, ``F(0) = initial``, through ``x^order``.

    ``rhs`` maps a series known through ``x^m`` to a series whose ``x^m``
    coefficient depends only on the given coefficients.
    """
    coeffs = [to_fraction(initial)]
    for m in range(order):
        known = TruncatedSeries.from_list(coeffs)
        coeffs.append(rhs(known)[m] / (m + 1))
    return TruncatedSeries.from_list(coeffs)
