"""Compactified lattice point counts from the cut-and-join recursion.

``nbar_value`` evaluates the count at positive perimeters.  Every term on the
right-hand side lives at a strictly lower level ``2g - 2 + n``; terms with a
zero perimeter are pointed counts and are always read off the already fitted
quasi-polynomial of that lower level.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .exact import QuasiPolynomial


class MissingLevelError(KeyError):
    """A lower level needed by the recursion has not been fitted yet."""


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


def level(g: int, n: int) -> int:
    return 2 * g - 2 + n


def levels_upto(max_level: int) -> list[tuple[int, int]]:
    """Stable ``(g, n)`` with ``n >= 1``, ordered by level and then genus."""
    out = []
    for L in range(1, max_level + 1):
        for g in range(0, L // 2 + 2):
            n = L + 2 - 2 * g
            if n >= 1 and is_stable(g, n):
                out.append((g, n))
    return out


def weight(p: int) -> int:
    return p if p else 1


def nbar_base(g: int, n: int, b: Sequence[int]) -> Fraction:
    """Closed forms for the two base levels ``(0, 3)`` and ``(1, 1)``."""
    if (g, n) == (0, 3):
        _check_args(3, b)
        return Fraction(1) if sum(b) % 2 == 0 else Fraction(0)
    if (g, n) == (1, 1):
        _check_args(1, b)
        (x,) = b
        return Fraction(x * x + 20, 48) if x % 2 == 0 else Fraction(0)
    raise ValueError(f"({g}, {n}) is not a base case")


def _check_args(n: int, b: Sequence[int]) -> None:
    if len(b) != n:
        raise ValueError(f"expected {n} arguments, got {len(b)}")
    if any((not isinstance(x, int)) or x < 0 for x in b):
        raise ValueError(f"arguments must be non-negative integers: {tuple(b)}")


class EvaluationContext:
    """Fitted lower levels plus a memo of recursion values.

    With ``raw_lower=False`` (the default) lower-level values at positive
    arguments come from the fitted polynomials as well; with
    ``raw_lower=True`` they are recomputed by the recursion itself and only
    zero-argument values touch the polynomials.
    """

    def __init__(self, polynomials: Mapping[tuple[int, int], QuasiPolynomial] | None = None,
                 raw_lower: bool = False, memoize: bool = True):
        self.polynomials = dict(polynomials or {})
        self.raw_lower = raw_lower
        self.memoize = memoize
        self.memo: dict[tuple, Fraction] = {}

    def polynomial(self, g: int, n: int) -> QuasiPolynomial:
        try:
            return self.polynomials[(g, n)]
        except KeyError:
            raise MissingLevelError(f"N̄({g},{n}) has not been fitted") from None

    def lower(self, g: int, n: int, args: tuple[int, ...]) -> Fraction:
        if not is_stable(g, n):
            return Fraction(0)
        if sum(args) % 2:
            return Fraction(0)
        if 0 in args or not self.raw_lower:
            return self.polynomial(g, n).evaluate(args)
        return nbar_value(g, n, args, self)


def nbar_value(g: int, n: int, b: Sequence[int], ctx: EvaluationContext | None = None) -> Fraction:
    """``N̄_{g,n}(b)`` for positive integer ``b`` via the recursion."""
    if not is_stable(g, n) or n < 1:
        raise ValueError(f"({g}, {n}) is not a stable level")
    b = tuple(b)
    if len(b) != n:
        raise ValueError(f"expected {n} arguments, got {len(b)}")
    if any((not isinstance(x, int)) or x < 1 for x in b):
        raise ValueError(f"the recursion needs positive integer perimeters: {b}")
    if sum(b) % 2:
        return Fraction(0)
    if (g, n) in ((0, 3), (1, 1)):
        return nbar_base(g, n, b)
    ctx = ctx if ctx is not None else EvaluationContext()
    key = (g, n, tuple(sorted(b)))
    if ctx.memoize and key in ctx.memo:
        return ctx.memo[key]
    value = _recursion(g, n, b, ctx)
    if ctx.memoize:
        ctx.memo[key] = value
    return value


def _recursion(g: int, n: int, b: tuple[int, ...], ctx: EvaluationContext) -> Fraction:
    total = sum(b)
    lower = ctx.lower
    pair_sum = Fraction(0)
    # unordered pairs; only even q survives the parity of the remaining count
    if is_stable(g, n - 1):
        for i, j in combinations(range(n), 2):
            rest = tuple(x for t, x in enumerate(b) if t not in (i, j))
            s = b[i] + b[j]
            for q in range(2, s + 1, 2):
                p = s - q
                pair_sum += weight(p) * q * lower(g, n - 1, (p,) + rest)

    split_sum = Fraction(0)
    for i in range(n):
        rest = b[:i] + b[i + 1:]
        m = len(rest)
        subsets = [(tuple(rest[t] for t in range(m) if mask >> t & 1),
                    tuple(rest[t] for t in range(m) if not mask >> t & 1))
                   for mask in range(1 << m)]
        for r in range(2, b[i] + 1, 2):
            for p in range(b[i] - r + 1):
                q = b[i] - r - p
                w = weight(p) * weight(q) * r
                inner = Fraction(0)
                if g >= 1:
                    inner += lower(g - 1, n + 1, (p, q) + rest)
                for g1 in range(g + 1):
                    g2 = g - g1
                    for part1, part2 in subsets:
                        if not (is_stable(g1, len(part1) + 1) and is_stable(g2, len(part2) + 1)):
                            continue
                        left = lower(g1, len(part1) + 1, (p,) + part1)
                        if left:
                            inner += left * lower(g2, len(part2) + 1, (q,) + part2)
                split_sum += w * inner
    return (pair_sum + split_sum / 2) / total
