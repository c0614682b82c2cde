"""Cross-checks between the independent routes.

Every check is an exact comparison and returns a ``CheckResult`` listing
the offending point or monomial on failure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Callable, Iterable, Mapping

from .dualgraph import chi_compactified_via_strata, state_sum, state_sum_value
from .euler import ChiTable, chi_open, p3prime_sides
from .exact import Polynomial, QuasiPolynomial
from .fatgraph import census_n, census_n_pointed
from .known_polynomials import REFERENCE_ROWS
from .recursion import EvaluationContext, is_stable, level, nbar_value, weight

Store = Mapping[tuple[int, int], QuasiPolynomial]

MAX_FAILURES_REPORTED = 10


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, message: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(message())

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases,
                "failures": self.failures[:MAX_FAILURES_REPORTED]}


def _double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


@lru_cache(maxsize=None)
def _bracket(g: int, alphas: tuple[int, ...]) -> Fraction:
    n = len(alphas)
    if g < 0 or n == 0 or any(a < 0 for a in alphas):
        return Fraction(0)
    if sum(alphas) != 3 * g - 3 + n or not is_stable(g, n):
        return Fraction(0)
    if (g, alphas) == (0, (0, 0, 0)):
        return Fraction(1)
    if (g, alphas) == (1, (1,)):
        return Fraction(1, 24)
    # peel off the largest exponent as tau_{k+1}
    k = alphas[-1] - 1
    rest = alphas[:-1]
    total = Fraction(0)
    for j, d in enumerate(rest):
        coef = Fraction(_double_factorial(2 * k + 2 * d + 1), _double_factorial(2 * d - 1))
        total += coef * _sorted_bracket(g, rest[:j] + (d + k,) + rest[j + 1:])
    m = len(rest)
    for r in range(k):
        s = k - 1 - r
        coef = Fraction(_double_factorial(2 * r + 1) * _double_factorial(2 * s + 1), 2)
        inner = _sorted_bracket(g - 1, (r, s) + rest)
        for g1 in range(g + 1):
            for mask in range(1 << m):
                left = tuple(rest[t] for t in range(m) if mask >> t & 1)
                right = tuple(rest[t] for t in range(m) if not mask >> t & 1)
                a = _sorted_bracket(g1, (r,) + left)
                if a:
                    inner += a * _sorted_bracket(g - g1, (s,) + right)
        total += coef * inner
    return total / _double_factorial(2 * k + 3)


def _sorted_bracket(g: int, alphas: Iterable[int]) -> Fraction:
    return _bracket(g, tuple(sorted(alphas)))


def dvv_intersection(g: int, alphas: Iterable[int]) -> Fraction:
    """``<tau_{a_1} ... tau_{a_n}>_g`` from the Virasoro (DVV) recursion.

    Brackets violating the dimension constraint are zero.
    """
    return _sorted_bracket(g, alphas)


def top_coefficient(g: int, alphas: tuple[int, ...]) -> Fraction:
    """Predicted coefficient of ``prod b_i^{2 a_i}`` in the top degree part."""
    n = len(alphas)
    denom = 2 ** (5 * g - 6 + 2 * n)
    for a in alphas:
        denom *= factorial(a)
    return dvv_intersection(g, alphas) / denom


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def check_top_coefficients(nbar: QuasiPolynomial, result: CheckResult | None = None) -> CheckResult:
    g, n = nbar.g, nbar.n
    result = result or CheckResult(f"top({g},{n})")
    D = 3 * g - 3 + n
    for k in range(0, n + 1, 2):
        poly = nbar.cosets[k]
        result.expect(poly.degree == D, lambda: f"({g},{n}) k={k}: degree {poly.degree} != {D}")
        for alphas in _compositions(D, n):
            got = poly.coefficient(alphas)
            want = top_coefficient(g, alphas)
            result.expect(got == want, lambda: f"({g},{n}) k={k} exp={alphas}: {got} != {want}")
    return result


def string_sides(g: int, n: int, b: tuple[int, ...], nbar: Store) -> tuple[Fraction, Fraction]:
    lhs = nbar[(g, n + 1)].evaluate(b + (1,))
    rhs = Fraction(0)
    lower = nbar[(g, n)]
    for i, bi in enumerate(b):
        for m_ in range(bi + 1):
            rhs += weight(m_) * lower.evaluate(b[:i] + (m_,) + b[i + 1:])
    return lhs, rhs


def check_string(g: int, n: int, nbar: Store, max_entry: int = 8,
                 result: CheckResult | None = None) -> CheckResult:
    """``Nbar_{g,n+1}(b, 1)`` against the weighted sum over lowered ``b_i``, all ``1 <= b_i <= max_entry``.

    With ``sum(b)`` even both sides are zero by convention; only the
    left-hand vanishing is checked there.
    """
    result = result or CheckResult(f"string({g},{n})")
    for b in product(range(1, max_entry + 1), repeat=n):
        if sum(b) % 2 == 0:
            lhs = nbar[(g, n + 1)].evaluate(b + (1,))
            result.expect(lhs == 0, lambda: f"({g},{n}) b={b}: odd total but {lhs}")
            continue
        lhs, rhs = string_sides(g, n, b, nbar)
        result.expect(lhs == rhs, lambda: f"({g},{n}) b={b}: {lhs} != {rhs}")
    return result


def dilaton_difference(upper: QuasiPolynomial, k: int) -> Polynomial:
    """Coset ``k`` of ``Q(b, 2) - Q(b, 0)`` as a polynomial in ``n`` squared variables."""
    poly = upper.cosets[k]
    last = upper.n - 1
    return poly.substitute(last, 4) - poly.substitute(last, 0)


def check_dilaton(g: int, n: int, store: Store, label: str = "nbar",
                  result: CheckResult | None = None) -> CheckResult:
    """``Q_{g,n+1}(b,2) - Q_{g,n+1}(b,0) = (2g-2+n) Q_{g,n}(b)``, coefficient-wise per coset."""
    result = result or CheckResult(f"dilaton-{label}({g},{n})")
    upper, lower = store[(g, n + 1)], store[(g, n)]
    for k in range(n + 1):
        got = dilaton_difference(upper, k)
        want = lower.cosets[k] * level(g, n)
        result.expect(got == want, lambda: f"{label}({g},{n}) k={k}: {got.format('b', 2)} != {want.format('b', 2)}")
    return result


def check_zero_identities(g: int, n: int, nstore: Store, nbar: Store, table: ChiTable,
                          result: CheckResult) -> CheckResult:
    """P1, P2, P3 on N and P1', P2', P3' on Nbar at ``(g, n+1)``."""
    N, Nb = nstore[(g, n + 1)], nbar[(g, n + 1)]
    zeros, two = (0,) * (n + 1), (0,) * n + (2,)
    tag = f"({g},{n + 1})"
    result.expect(N(zeros) == chi_open(g, n + 1), lambda: f"P1 {tag}: {N(zeros)} != {chi_open(g, n + 1)}")
    result.expect(Nb(zeros) == table.chi_closed(g, n + 1), lambda: f"P1' {tag}: {Nb(zeros)}")
    if is_stable(g, n) and n >= 1:
        want = level(g, n) * nstore[(g, n)]((0,) * n)
        result.expect(N(two) - N(zeros) == want, lambda: f"P2 {tag}")
        want = level(g, n) * nbar[(g, n)]((0,) * n)
        result.expect(Nb(two) - Nb(zeros) == want, lambda: f"P2' {tag}")
    if n >= 1:
        lhs, rhs = p3prime_sides(g, n, Nb, table)
        result.expect(lhs == rhs, lambda: f"P3' {tag}: {lhs} != {rhs}")
    if is_stable(g, n):
        result.expect(N(two) == 0, lambda: f"P3 {tag}: {N(two)} != 0")
    return result


def check_constant_terms(g: int, n: int, nbar: Store, table: ChiTable,
                         result: CheckResult | None = None) -> CheckResult:
    """Fitted constant term, closed recursion and strata sum must coincide."""
    result = result or CheckResult(f"const({g},{n})")
    fitted = nbar[(g, n)].constant_term()
    recursive = table.chi_closed(g, n)
    strata = chi_compactified_via_strata(g, n, chi_open)
    result.expect(fitted == recursive == strata,
                  lambda: f"({g},{n}): fitted {fitted}, recursion {recursive}, strata {strata}")
    return result


def check_state_sum(g: int, n: int, nbar: Store, nstore: Store, points: Iterable[tuple[int, ...]] = (),
                    result: CheckResult | None = None) -> CheckResult:
    """Symbolic state sum equals the fitted ``Nbar``; pointwise sums equal the raw recursion."""
    result = result or CheckResult(f"statesum({g},{n})")
    assembled = state_sum(g, n, nstore)
    for k in range(n + 1):
        ok = assembled.cosets[k] == nbar[(g, n)].cosets[k]
        result.expect(ok, lambda: f"({g},{n}) k={k}: state sum differs from fitted polynomial")
    lower = {key: qp for key, qp in nbar.items() if level(*key) < level(g, n)}
    ctx = EvaluationContext(lower, raw_lower=True)
    for b in points:
        got = state_sum_value(g, n, b, nstore)
        want = nbar_value(g, n, b, ctx)
        result.expect(got == want, lambda: f"({g},{n}) b={b}: state sum {got} != recursion {want}")
    return result


def check_census(g: int, n: int, nstore: Store, max_total: int = 12,
                 result: CheckResult | None = None) -> CheckResult:
    """Fatgraph census against ``N`` at every admissible ``b`` (and its pointed variants)."""
    result = result or CheckResult(f"census({g},{n})")
    N = nstore[(g, n)]
    for p in range(1, n + 1):
        for pos in product(range(1, max_total + 1), repeat=p):
            total = sum(pos)
            if total > max_total or total % 2:
                continue
            b = pos + (0,) * (n - p)
            count = census_n(g, n, b) if p == n else census_n_pointed(g, n, b)
            want = N(b)
            result.expect(count == want, lambda: f"({g},{n}) b={b}: census {count} != N {want}")
    return result


def run_table_regression(nbar: Store, result: CheckResult | None = None) -> CheckResult:
    result = result or CheckResult("table")
    for (g, n, k), want in sorted(REFERENCE_ROWS.items(), key=lambda kv: (level(*kv[0][:2]), kv[0])):
        if (g, n) not in nbar:
            result.expect(False, lambda: f"({g},{n}) has not been fitted")
            continue
        got = nbar[(g, n)].cosets[k]
        result.expect(got == want, lambda: f"row ({g},{n},k={k}): {got.format('b', 2)} != {want.format('b', 2)}")
    return result


IDENTITY_MAX_LEVEL = 4
STRING_MAX_ENTRY = 8
CENSUS_LEVELS = ((0, 3), (0, 4), (1, 1), (0, 5), (1, 2))
CENSUS_MAX_TOTAL = 12


def _lowered_pairs(nbar: Store, max_level: int):
    """``(g, n)`` with both ``(g, n)`` and ``(g, n+1)`` fitted and ``(g, n+1)`` at level <= max_level."""
    return [(g, n - 1) for g, n in sorted(nbar, key=lambda k: (level(*k), k))
            if level(g, n) <= max_level and (g, n - 1) in nbar]


def _ordered(store: Store):
    return sorted(store, key=lambda k: (level(*k), k))


def suite_string(store) -> list[CheckResult]:
    return [check_string(g, n, store.nbar, STRING_MAX_ENTRY) for g, n in _lowered_pairs(store.nbar, IDENTITY_MAX_LEVEL)]


def suite_dilaton(store) -> list[CheckResult]:
    out = []
    for g, n in _lowered_pairs(store.nbar, IDENTITY_MAX_LEVEL):
        out.append(check_dilaton(g, n, store.nbar, "nbar"))
        out.append(check_dilaton(g, n, store.n, "n"))
    table = store.chi_table()
    for g, m in _ordered(store.nbar):
        out.append(check_zero_identities(g, m - 1, store.n, store.nbar, table, CheckResult(f"zeros({g},{m})")))
    return out


def suite_top(store) -> list[CheckResult]:
    return [check_top_coefficients(store.nbar[key]) for key in _ordered(store.nbar)]


def suite_const(store) -> list[CheckResult]:
    table = store.chi_table()
    return [check_constant_terms(g, n, store.nbar, table) for g, n in _ordered(store.nbar)]


def suite_statesum(store) -> list[CheckResult]:
    out = []
    for g, n in _ordered(store.nbar):
        points = [(2,) * n, (1, 1) + (2,) * (n - 2) if n >= 2 else (4,)]
        out.append(check_state_sum(g, n, store.nbar, store.n, points))
    return out


def suite_census(store) -> list[CheckResult]:
    return [check_census(g, n, store.n, CENSUS_MAX_TOTAL) for g, n in CENSUS_LEVELS]


def suite_table(store) -> list[CheckResult]:
    return [run_table_regression(store.nbar)]


SUITE_FUNCTIONS = {
    "string": suite_string,
    "dilaton": suite_dilaton,
    "top": suite_top,
    "const": suite_const,
    "statesum": suite_statesum,
    "census": suite_census,
    "table": suite_table,
}
SUITES = ("all",) + tuple(SUITE_FUNCTIONS)


def run_suite(name: str, store) -> dict:
    """Run one suite (or ``all``) against a fitted store and return a JSON-ready report."""
    names = list(SUITE_FUNCTIONS) if name == "all" else [name]
    checks = []
    for suite in names:
        for result in SUITE_FUNCTIONS[suite](store):
            checks.append({"suite": suite, **result.to_json()})
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}
