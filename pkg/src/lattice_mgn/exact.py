"""Exact rational algebra: sparse polynomials, parity-coset quasi-polynomials,
linear solving over the rationals and Bernoulli numbers.

All coefficients are :class:`fractions.Fraction`; nothing here ever touches a
float.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def fraction_str(value: Fraction) -> str:
    """Render as ``"p/q"`` (or ``"p"`` when the denominator is 1)."""
    return str(Fraction(value))


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples of length ``arity`` to non-zero
    coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("arity", "terms", "_int_form")

    def __init__(self, arity: int, terms: Mapping[Exponent, object] | None = None):
        self.arity = arity
        clean: dict[Exponent, Fraction] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != arity or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for arity {arity}")
            c = to_fraction(coef)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._int_form = None

    @classmethod
    def _trusted(cls, arity: int, terms: dict) -> "Polynomial":
        """Wrap already-clean ``Exponent -> Fraction`` terms, dropping zeros."""
        self = cls.__new__(cls)
        self.arity = arity
        self.terms = {e: c for e, c in terms.items() if c}
        self._int_form = None
        return self

    @classmethod
    def constant(cls, arity: int, value) -> "Polynomial":
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def variable(cls, arity: int, index: int) -> "Polynomial":
        exp = [0] * arity
        exp[index] = 1
        return cls(arity, {tuple(exp): 1})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.arity)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial(self.arity, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order, highest degree first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def _check_arity(self, other: "Polynomial") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.arity, other)
        self._check_arity(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial._trusted(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._trusted(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_fraction(other)
            return Polynomial._trusted(self.arity, {e: c * v for e, v in self.terms.items()})
        self._check_arity(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._trusted(self.arity, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.arity}, {self.format()})"

    def _integer_form(self):
        if self._int_form is None:
            den = 1
            for c in self.terms.values():
                den = den * c.denominator // _gcd(den, c.denominator)
            ints = [(e, int(c * den)) for e, c in self.terms.items()]
            self._int_form = (den, ints)
        return self._int_form

    def evaluate(self, values: Sequence) -> Fraction:
        """Evaluate at the given variable values (integers evaluate fastest)."""
        if len(values) != self.arity:
            raise ValueError(f"expected {self.arity} values, got {len(values)}")
        if all(isinstance(v, int) for v in values):
            den, ints = self._integer_form()
            total = 0
            for exp, c in ints:
                term = c
                for v, k in zip(values, exp):
                    if k:
                        term *= v**k
                total += term
            return Fraction(total, den)
        vals = [to_fraction(v) for v in values]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, k in zip(vals, exp):
                if k:
                    term *= v**k
            total += term
        return total

    def permute(self, perm: Sequence[int]) -> "Polynomial":
        """Variable ``i`` of the result is variable ``perm[i]`` of ``self``."""
        inv = [0] * self.arity
        for i, p in enumerate(perm):
            inv[p] = i
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.arity
            for j, k in enumerate(e):
                ne[inv[j]] = k
            out[tuple(ne)] = c
        return Polynomial(self.arity, out)

    def embed(self, arity: int, slot_map: Sequence[int | None]) -> "Polynomial":
        """Re-index into a polynomial of ``arity`` variables.

        ``slot_map[j]`` is the target index of variable ``j``; ``None`` sets the
        variable to zero (terms using it are dropped).
        """
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * arity
            for j, k in enumerate(e):
                if not k:
                    continue
                t = slot_map[j]
                if t is None:
                    break
                ne[t] += k
            else:
                key = tuple(ne)
                out[key] = out.get(key, Fraction(0)) + c
        return Polynomial(arity, out)

    def substitute(self, index: int, value) -> "Polynomial":
        """Fix variable ``index`` to ``value``; the result has one variable fewer."""
        value = to_fraction(value)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            key = e[:index] + e[index + 1:]
            out[key] = out.get(key, Fraction(0)) + c * value ** e[index]
        return Polynomial(self.arity - 1, out)

    def format(self, name: str = "x", power: int = 1) -> str:
        """Human-readable form; ``power=2`` prints ``x_i`` as ``b_i^2``."""
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"{name}{i + 1}" + (f"^{k * power}" if k * power != 1 else "")
                for i, k in enumerate(exp)
                if k
            )
            if not mono:
                parts.append(fraction_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{fraction_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class QuasiPolynomial:
    """Symmetric even quasi-polynomial on the parity cosets of ``2Z^n``.

    ``cosets[k]`` is a polynomial in ``b_1^2, ..., b_n^2`` used when exactly
    ``k`` arguments are odd, with the odd arguments placed in the first ``k``
    slots.  Odd ``k`` always carries the zero polynomial.
    """

    __slots__ = ("g", "n", "cosets", "_cache")

    def __init__(self, g: int, n: int, cosets: Mapping[int, Polynomial]):
        self.g = g
        self.n = n
        full = {}
        for k in range(n + 1):
            p = cosets.get(k, Polynomial(n))
            if p.arity != n:
                raise ValueError(f"coset {k} has arity {p.arity}, expected {n}")
            if k % 2 and not p.is_zero():
                raise ValueError(f"coset {k} (odd) must be zero")
            full[k] = p
        self.cosets = full
        self._cache: dict[tuple, Fraction] = {}

    @property
    def degree_bound(self) -> int:
        return 3 * self.g - 3 + self.n

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.cosets.values())

    def evaluate(self, b: Sequence[int]) -> Fraction:
        if len(b) != self.n:
            raise ValueError(f"N({self.g},{self.n}) takes {self.n} arguments, got {len(b)}")
        key = tuple(sorted(b))
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if any((not isinstance(x, int)) or x < 0 for x in key):
            raise ValueError(f"arguments must be non-negative integers: {tuple(b)}")
        odd = [x * x for x in key if x % 2]
        even = [x * x for x in key if not x % 2]
        k = len(odd)
        value = Fraction(0) if k % 2 else self.cosets[k].evaluate(odd + even)
        self._cache[key] = value
        return value

    __call__ = evaluate

    def constant_term(self) -> Fraction:
        return self.cosets[0].constant_term()

    def __eq__(self, other):
        if not isinstance(other, QuasiPolynomial):
            return NotImplemented
        return (self.g, self.n) == (other.g, other.n) and self.cosets == other.cosets

    def __repr__(self):
        return f"QuasiPolynomial(g={self.g}, n={self.n}, degree={self.degree})"

    def coset_json(self, k: int) -> dict:
        return polynomial_to_json(self.cosets[k], g=self.g, n=self.n, k=k)

    def to_json(self) -> list[dict]:
        return [self.coset_json(k) for k in range(self.n + 1)]

    @classmethod
    def from_json(cls, items: Iterable[Mapping]) -> "QuasiPolynomial":
        items = list(items)
        if not items:
            raise ValueError("empty quasi-polynomial document")
        g, n = items[0]["g"], items[0]["n"]
        cosets = {}
        for item in items:
            if (item["g"], item["n"]) != (g, n):
                raise ValueError("mixed (g, n) in one quasi-polynomial")
            cosets[item["k"]] = polynomial_from_json(item)
        return cls(g, n, cosets)


def polynomial_to_json(p: Polynomial, **header) -> dict:
    doc = dict(header)
    doc["terms"] = [{"exp": list(e), "coef": fraction_str(c)} for e, c in p.sorted_terms()]
    return doc


def polynomial_from_json(doc: Mapping) -> Polynomial:
    arity = doc["n"] if "n" in doc else len(doc["terms"][0]["exp"])
    return Polynomial(arity, {tuple(t["exp"]): Fraction(t["coef"]) for t in doc["terms"]})


def dumps_polynomial(p: Polynomial, **header) -> str:
    return json.dumps(polynomial_to_json(p, **header), sort_keys=True)


class RankDeficientError(ValueError):
    """The matrix does not have full column rank."""

    def __init__(self, columns: Sequence[int]):
        self.columns = list(columns)
        super().__init__(f"rank deficient; no pivot in columns {self.columns}")


class InconsistentSystemError(ValueError):
    pass


def solve_linear_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly by Gauss-Jordan elimination.

    The matrix may have more rows than columns as long as the system is
    consistent; it must have full column rank.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if len(rhs) != rows:
        raise ValueError("rhs length does not match the number of rows")
    a = [[to_fraction(x) for x in row] + [to_fraction(r)] for row, r in zip(matrix, rhs)]
    if any(len(row) != cols + 1 for row in a):
        raise ValueError("ragged matrix")
    pivot_row = 0
    missing = []
    for col in range(cols):
        piv = next((r for r in range(pivot_row, rows) if a[r][col]), None)
        if piv is None:
            missing.append(col)
            continue
        a[pivot_row], a[piv] = a[piv], a[pivot_row]
        inv = 1 / a[pivot_row][col]
        a[pivot_row] = [x * inv for x in a[pivot_row]]
        prow = a[pivot_row]
        for r in range(rows):
            if r != pivot_row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], prow)]
        pivot_row += 1
    if missing:
        raise RankDeficientError(missing)
    for r in range(pivot_row, rows):
        if a[r][cols]:
            raise InconsistentSystemError(f"row {r} has non-zero residual {a[r][cols]}")
    return [a[i][cols] for i in range(cols)]


class RowEchelon:
    """Incrementally built row echelon form, used to pick independent rows."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, row: Sequence) -> bool:
        """Reduce ``row`` against the basis; keep it and return True if independent."""
        v = [to_fraction(x) for x in row]
        for piv, basis in self.rows:
            if v[piv]:
                f = v[piv]
                v = [x - f * y for x, y in zip(v, basis)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv = 1 / v[lead]
        self.rows.append((lead, [x * inv for x in v]))
        return True


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number ``B_m`` with ``B_1 = -1/2`` (so ``B_2 = 1/6``)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return Fraction(1)
    if m > 1 and m % 2:
        return Fraction(0)
    total = sum(comb(m + 1, j) * bernoulli(j) for j in range(m))
    return -total / (m + 1)
