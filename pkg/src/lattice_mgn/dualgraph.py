"""Stable dual graphs, their automorphism groups, and the sum over strata.

A dual graph has genus-decorated vertices, edges (loops and multi-edges
allowed) and ``n`` labeled tails.  Automorphisms act on half-edges: they
fix every tail, preserve vertex genera, and may swap parallel edges or flip
loops.

Graphs of type ``(g, n)`` are generated by repeatedly degenerating a vertex
(adding a self-node, or splitting it in two joined by a new edge) starting
from the smooth graph, and deduplicated by a canonical form.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import permutations, product
from math import factorial
from typing import Callable, Mapping, Sequence

from .exact import Polynomial, QuasiPolynomial
from .recursion import is_stable


class MissingVertexPolynomialError(KeyError):
    pass


@dataclass(frozen=True)
class DualGraph:
    genera: tuple[int, ...]
    tails: tuple[int, ...]
    """``tails[i]`` is the vertex carrying the tail labeled ``i + 1``."""
    edges: tuple[tuple[int, int], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n(self) -> int:
        return len(self.tails)

    def valence(self, v: int) -> int:
        ends = sum((a == v) + (b == v) for a, b in self.edges)
        return ends + self.tails.count(v)

    def tail_labels(self, v: int) -> tuple[int, ...]:
        """0-based labels of the tails at ``v``."""
        return tuple(i for i, t in enumerate(self.tails) if t == v)

    def loops(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == b == v)

    @property
    def betti(self) -> int:
        return len(self.edges) - self.n_vertices + 1

    @property
    def genus(self) -> int:
        return self.betti + sum(self.genera)

    def is_connected(self) -> bool:
        adj = {v: set() for v in range(self.n_vertices)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def is_stable(self) -> bool:
        return all(2 * h - 2 + self.valence(v) > 0 for v, h in enumerate(self.genera))

    def signature(self, v: int) -> tuple[int, int]:
        return self.genera[v], self.valence(v)

    def _invariant(self, v: int):
        return (self.genera[v], self.tail_labels(v), self.valence(v), self.loops(v))

    def _orderings(self):
        """Vertex orderings compatible with the sorted invariant blocks."""
        order = sorted(range(self.n_vertices), key=self._invariant)
        blocks = []
        for v in order:
            if blocks and self._invariant(blocks[-1][0]) == self._invariant(v):
                blocks[-1].append(v)
            else:
                blocks.append([v])
        for choice in product(*(permutations(b) for b in blocks)):
            yield [v for block in choice for v in block]

    def _relabelled_key(self, ordering):
        pos = {v: i for i, v in enumerate(ordering)}
        edges = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in self.edges))
        return (tuple(self.genera[v] for v in ordering), tuple(pos[t] for t in self.tails), edges)

    @cached_property
    def canonical_key(self):
        return min(self._relabelled_key(o) for o in self._orderings())

    def canonical(self) -> "DualGraph":
        genera, tails, edges = self.canonical_key
        return DualGraph(genera, tails, edges)

    @cached_property
    def vertex_automorphisms(self) -> int:
        """Vertex permutations preserving genera, tails and edge multiplicities."""
        base = Counter(tuple(sorted(e)) for e in self.edges)
        count = 0
        ident = list(range(self.n_vertices))
        for ordering in self._orderings():
            # ordering lists the images of the invariant-sorted vertices
            sigma = dict(zip(sorted(ident, key=self._invariant), ordering))
            if any(sigma[t] != t for t in self.tails):
                continue
            moved = Counter(tuple(sorted((sigma[a], sigma[b]))) for a, b in self.edges)
            if moved == base:
                count += 1
        return count

    @cached_property
    def aut_order(self) -> int:
        """Order of the half-edge automorphism group fixing every tail."""
        mult = Counter(tuple(sorted(e)) for e in self.edges)
        local = 1
        for (a, b), m in mult.items():
            local *= factorial(m) * (2**m if a == b else 1)
        return self.vertex_automorphisms * local

    def to_json(self) -> dict:
        return {
            "vertices": [{"genus": h, "tails": [i + 1 for i in self.tail_labels(v)]}
                         for v, h in enumerate(self.genera)],
            "edges": [list(e) for e in self.edges],
            "autOrder": self.aut_order,
        }


def smooth_graph(g: int, n: int) -> DualGraph:
    return DualGraph((g,), (0,) * n, ())


def _degenerations(G: DualGraph):
    for v, h in enumerate(G.genera):
        if h >= 1:
            genera = list(G.genera)
            genera[v] -= 1
            yield DualGraph(tuple(genera), G.tails, G.edges + ((v, v),))
        # half-edges at v: ("t", label) or ("e", edge index, side)
        halves = [("t", i) for i in G.tail_labels(v)]
        for idx, e in enumerate(G.edges):
            for side in (0, 1):
                if e[side] == v:
                    halves.append(("e", idx, side))
        m = len(halves)
        w = G.n_vertices
        for h1 in range(h + 1):
            h2 = h - h1
            for mask in range(1 << m):
                size_b = bin(mask).count("1")
                if 2 * h1 - 2 + (m - size_b) + 1 <= 0 or 2 * h2 - 2 + size_b + 1 <= 0:
                    continue
                tails = list(G.tails)
                edges = [list(e) for e in G.edges]
                for t, item in enumerate(halves):
                    if not mask >> t & 1:
                        continue
                    if item[0] == "t":
                        tails[item[1]] = w
                    else:
                        edges[item[1]][item[2]] = w
                genera = list(G.genera)
                genera[v] = h1
                genera.append(h2)
                edges.append([v, w])
                yield DualGraph(tuple(genera), tuple(tails),
                                tuple(sorted(tuple(sorted(e)) for e in edges)))


@lru_cache(maxsize=None)
def enumerate_dual_graphs(g: int, n: int) -> tuple[DualGraph, ...]:
    """One representative per isomorphism class of stable graphs of type ``(g, n)``."""
    if not is_stable(g, n):
        raise ValueError(f"({g}, {n}) is not stable")
    start = smooth_graph(g, n).canonical()
    found = {start.canonical_key: start}
    frontier = [start]
    for _ in range(3 * g - 3 + n):
        nxt = {}
        for G in frontier:
            for H in _degenerations(G):
                key = H.canonical_key
                if key not in found and key not in nxt:
                    nxt[key] = H.canonical()
        found.update(nxt)
        frontier = list(nxt.values())
    return tuple(sorted(found.values(), key=lambda G: (len(G.edges), G.canonical_key)))


def aut_order(G: DualGraph) -> int:
    return G.aut_order


def _vertex_polynomial(G: DualGraph, v: int, k: int, store: Mapping[tuple[int, int], QuasiPolynomial]) -> Polynomial:
    """Vertex factor ``N_{h,m}(b_I, 0, ..., 0)`` on the global coset ``k``.

    Tail labels below ``k`` are the odd arguments.  Edge ends are zero
    arguments and sit in the even block of the vertex polynomial.
    """
    h, m = G.signature(v)
    assert is_stable(h, m), f"unstable vertex ({h}, {m})"
    try:
        qp = store[(h, m)]
    except KeyError:
        raise MissingVertexPolynomialError(f"N({h},{m}) is required but missing") from None
    labels = G.tail_labels(v)
    odd = [i for i in labels if i < k]
    even = [i for i in labels if i >= k]
    slot_map = odd + even + [None] * (m - len(labels))
    return qp.cosets[len(odd)].embed(G.n, slot_map)


def graph_polynomial(G: DualGraph, k: int, store) -> Polynomial:
    result = Polynomial.constant(G.n, Fraction(1, G.aut_order))
    for v in range(G.n_vertices):
        result = result * _vertex_polynomial(G, v, k, store)
        if result.is_zero():
            break
    return result


def state_sum(g: int, n: int, store, include_smooth: bool = True) -> QuasiPolynomial:
    """Sum over dual graphs of ``prod_v N_{h(v),n(v)}(b_I(v), 0) / |Aut G|``."""
    graphs = enumerate_dual_graphs(g, n)
    if not include_smooth:
        graphs = [G for G in graphs if G.edges]
    cosets = {}
    for k in range(0, n + 1, 2):
        total: dict = {}
        for G in graphs:
            for e, c in graph_polynomial(G, k, store).terms.items():
                total[e] = total.get(e, 0) + c
        cosets[k] = Polynomial(n, total)
    return QuasiPolynomial(g, n, cosets)


def state_sum_nbar(g: int, n: int, n_store) -> QuasiPolynomial:
    return state_sum(g, n, n_store)


def invert_state_sum(g: int, n: int, nbar: QuasiPolynomial, n_store) -> QuasiPolynomial:
    """Recover the smooth-stratum quasi-polynomial ``N_{g,n}`` from ``N̄_{g,n}``.

    ``n_store`` must already hold ``N_{h,m}`` for every vertex of every
    non-smooth graph, i.e. for ``h < g`` or ``h = g, m < n``.  The result is
    also written into ``n_store``.
    """
    boundary = state_sum(g, n, n_store, include_smooth=False)
    cosets = {k: nbar.cosets[k] - boundary.cosets[k] for k in range(n + 1)}
    result = QuasiPolynomial(g, n, cosets)
    if isinstance(n_store, dict):
        n_store[(g, n)] = result
    return result


def state_sum_value(g: int, n: int, b: Sequence[int], store, include_smooth: bool = True) -> Fraction:
    """Pointwise state sum at ``b``, evaluating vertex quasi-polynomials directly."""
    total = Fraction(0)
    for G in enumerate_dual_graphs(g, n):
        if not include_smooth and not G.edges:
            continue
        term = Fraction(1, G.aut_order)
        for v in range(G.n_vertices):
            h, m = G.signature(v)
            args = tuple(b[i] for i in G.tail_labels(v))
            args += (0,) * (m - len(args))
            term *= store[(h, m)].evaluate(args)
            if not term:
                break
        total += term
    return total


def chi_compactified_via_strata(g: int, n: int, chi_open: Callable[[int, int], Fraction]) -> Fraction:
    """Orbifold Euler characteristic of the compactification as a sum over strata."""
    total = Fraction(0)
    for G in enumerate_dual_graphs(g, n):
        term = Fraction(1, G.aut_order)
        for v in range(G.n_vertices):
            term *= chi_open(*G.signature(v))
        total += term
    return total
