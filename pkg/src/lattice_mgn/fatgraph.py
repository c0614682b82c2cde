"""Brute-force census of labeled fatgraphs (ribbon graphs).

A fatgraph on the half-edge set ``{0, ..., 2E-1}`` is a pair of permutations:
``tau0`` cycles around vertices and ``tau1`` is a fixed-point-free involution
pairing half-edges into edges.  Boundary cycles are the cycles of
``tau2 = tau0 o tau1``.

Counting uses orbit-stabiliser: the weighted count ``sum 1/|Aut|`` equals the
number of labeled structures on the half-edge set divided by ``(2E)!``.
Since every boundary-labeled ``tau2`` of the prescribed cycle type is
conjugate to one fixed representative, it is enough to fix ``tau2`` and
enumerate involutions ``tau1``; the structure count is then
``#valid tau1 * (2E)! / prod(b)``.  Two slower routes (everything free, or
``tau1`` fixed and ``tau0`` enumerated) are kept for cross-checking.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, perm, prod
from typing import Iterator, Sequence

DEFAULT_MAX_HALF_EDGES = 14

Perm = tuple[int, ...]


class CensusInfeasibleError(ValueError):
    pass


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """``(a o b)(x) = a[b[x]]``."""
    return tuple(a[x] for x in b)


def inverse(a: Sequence[int]) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def is_transitive(size: int, *gens: Sequence[int]) -> bool:
    if size == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for gen in gens:
            y = gen[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == size


def fixed_point_free_involutions(size: int) -> Iterator[Perm]:
    """All perfect matchings of ``range(size)`` as involutions."""
    p = [-1] * size

    def rec():
        try:
            x = p.index(-1)
        except ValueError:
            yield tuple(p)
            return
        for y in range(x + 1, size):
            if p[y] == -1:
                p[x], p[y] = y, x
                yield from rec()
                p[x] = p[y] = -1

    if size % 2 == 0:
        yield from rec()


def double_factorial(m: int) -> int:
    return prod(range(m, 0, -2)) if m > 0 else 1


@dataclass(frozen=True)
class FatGraph:
    tau0: Perm
    tau1: Perm
    boundary_labels: tuple[int, ...] = ()
    vertex_labels: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.tau0) != len(self.tau1):
            raise ValueError("tau0 and tau1 act on different sets")
        if any(self.tau1[x] == x or self.tau1[self.tau1[x]] != x for x in range(len(self.tau1))):
            raise ValueError("tau1 must be a fixed-point-free involution")

    @property
    def half_edges(self) -> int:
        return len(self.tau0)

    @property
    def tau2(self) -> Perm:
        return compose(self.tau0, self.tau1)

    @property
    def vertices(self) -> list[tuple[int, ...]]:
        return cycles(self.tau0)

    @property
    def edges(self) -> list[tuple[int, ...]]:
        return cycles(self.tau1)

    @property
    def boundaries(self) -> list[tuple[int, ...]]:
        return cycles(self.tau2)

    def is_connected(self) -> bool:
        return is_transitive(self.half_edges, self.tau0, self.tau1)

    @property
    def genus(self) -> int:
        """Genus of a connected fatgraph from ``2 - 2g - n = V - E``."""
        chi = len(self.vertices) - len(self.edges)
        twice = 2 - len(self.boundaries) - chi
        if twice % 2:
            raise ValueError("inconsistent Euler characteristic")
        return twice // 2


def _boundary_permutation(b: Sequence[int]) -> Perm:
    tau2 = []
    start = 0
    for length in b:
        tau2.extend(start + (i + 1) % length for i in range(length))
        start += length
    return tuple(tau2)


def _vertex_labelings(valences: Sequence[int], labels: int) -> int:
    """Injective placements of ``labels`` distinct vertex labels covering every valence-1 vertex."""
    ones = sum(1 for v in valences if v == 1)
    free = len(valences) - ones
    if ones > labels or labels - ones > free:
        return 0
    return perm(labels, ones) * perm(free, labels - ones)


@lru_cache(maxsize=None)
def _count_fixed_boundary(g: int, b: tuple[int, ...], labeled_vertices: int) -> int:
    """Weighted number of ``tau1`` completing the canonical ``tau2``.

    Each admissible ``tau1`` is weighted by the number of ways to place the
    vertex labels.
    """
    size = sum(b)
    tau2 = _boundary_permutation(b)
    edges = size // 2
    target_vertices = 2 - 2 * g - len(b) + edges
    if target_vertices < max(labeled_vertices, 1):
        return 0
    allow_leaves = labeled_vertices > 0
    p = [-1] * size
    total = 0

    def finish():
        tau0 = compose(tau2, p)
        cyc = cycles(tau0)
        if len(cyc) != target_vertices:
            return 0
        if not is_transitive(size, tau0, p):
            return 0
        if labeled_vertices:
            return _vertex_labelings([len(c) for c in cyc], labeled_vertices)
        return 1

    def rec(x):
        nonlocal total
        while x < size and p[x] != -1:
            x += 1
        if x == size:
            total += finish()
            return
        for y in range(x + 1, size):
            if p[y] != -1:
                continue
            # tau0(x) = tau2(y) and tau0(y) = tau2(x): a fixed point is a leaf
            if not allow_leaves and (tau2[y] == x or tau2[x] == y):
                continue
            p[x], p[y] = y, x
            rec(x + 1)
            p[x] = p[y] = -1

    rec(0)
    return total


@dataclass(frozen=True)
class CensusResult:
    count: Fraction
    structures: int
    half_edges: int

    def to_json(self) -> dict:
        return {"count": str(self.count), "structures": self.structures, "halfEdges": self.half_edges}


def _labeling_symmetry(b: Sequence[int]) -> int:
    return prod(factorial(m) for m in Counter(b).values())


def census(g: int, n: int, b: Sequence[int], max_half_edges: int = DEFAULT_MAX_HALF_EDGES) -> CensusResult:
    """Weighted fatgraph count, pointed when ``b`` has trailing zeros.

    ``b`` holds ``p >= 1`` positive boundary lengths; zero entries stand for
    labeled vertices.  Returns the count together with the number of labeled
    structures on ``2E`` half-edges it was derived from.
    """
    b = tuple(b)
    if len(b) != n:
        raise ValueError(f"expected {n} arguments, got {len(b)}")
    if any((not isinstance(x, int)) or x < 0 for x in b):
        raise ValueError(f"perimeters must be non-negative integers: {b}")
    positive = tuple(sorted((x for x in b if x), reverse=True))
    if not positive:
        raise ValueError("at least one perimeter must be positive")
    size = sum(positive)
    if size % 2:
        return CensusResult(Fraction(0), 0, size)
    if size > max_half_edges:
        raise CensusInfeasibleError(f"2E = {size} exceeds the configured bound {max_half_edges}")
    labeled = n - len(positive)
    valid = _count_fixed_boundary(g, positive, labeled)
    # labeled structures: valid tau1 times the boundary-labeled tau2 of this type
    structures = valid * factorial(size) // prod(positive)
    return CensusResult(Fraction(structures, factorial(size)), structures, size)


def census_n(g: int, n: int, b: Sequence[int], max_half_edges: int = DEFAULT_MAX_HALF_EDGES) -> Fraction:
    if 0 in b:
        raise ValueError("use census_n_pointed for zero perimeters")
    return census(g, n, b, max_half_edges).count


def census_n_pointed(g: int, n: int, b: Sequence[int], max_half_edges: int = DEFAULT_MAX_HALF_EDGES) -> Fraction:
    return census(g, n, b, max_half_edges).count


# -- slower reference routes -------------------------------------------------

def _structure_ok(g: int, n_boundary: int, tau0, tau1, labeled_vertices: int):
    """Return (tau2 cycles, vertex cycles) if the pair is a valid genus-g candidate."""
    size = len(tau0)
    vcyc = cycles(tau0)
    if not labeled_vertices and any(len(c) == 1 for c in vcyc):
        return None
    tau2 = compose(tau0, tau1)
    bcyc = cycles(tau2)
    if len(bcyc) != n_boundary:
        return None
    if len(vcyc) != 2 - 2 * g - n_boundary + size // 2:
        return None
    if not is_transitive(size, tau0, tau1):
        return None
    return bcyc, vcyc


def _weighted_labelings(b, bcyc, vcyc, labeled_vertices) -> int:
    if sorted(len(c) for c in bcyc) != sorted(b):
        return 0
    boundary = _labeling_symmetry(b)
    if labeled_vertices:
        return boundary * _vertex_labelings([len(c) for c in vcyc], labeled_vertices)
    return boundary


def labeled_structures_bruteforce(g: int, n: int, b: Sequence[int]) -> int:
    """Enumerate every ``(tau0, tau1)`` on ``sum(b)`` half-edges (tiny sizes only)."""
    positive = [x for x in b if x]
    size = sum(positive)
    labeled = n - len(positive)
    total = 0
    for tau1 in fixed_point_free_involutions(size):
        for tau0 in permutations(range(size)):
            ok = _structure_ok(g, len(positive), tau0, tau1, labeled)
            if ok:
                total += _weighted_labelings(positive, *ok, labeled)
    return total


def labeled_structures_fixed_tau1(g: int, n: int, b: Sequence[int]) -> int:
    """Fix ``tau1 = (0 1)(2 3)...`` and build ``tau0`` cycle by cycle.

    Partial boundary cycles longer than the largest perimeter are pruned.
    The result is multiplied by ``(2E - 1)!!``, the number of involutions.
    """
    positive = [x for x in b if x]
    size = sum(positive)
    labeled = n - len(positive)
    longest = max(positive)
    tau1 = tuple(x ^ 1 for x in range(size))
    tau0 = [-1] * size
    used = [False] * size
    total = 0

    def boundary_too_long():
        # walk tau2 = tau0 o tau1 from every start along assigned entries
        for start in range(size):
            x, steps = start, 0
            while True:
                y = tau0[tau1[x]]
                if y == -1:
                    break
                steps += 1
                if y == start:
                    break
                if steps >= longest:
                    return True
                x = y
        return False

    def rec(cycle_start, current):
        nonlocal total
        # close the current vertex cycle or extend it
        options = [y for y in range(size) if not used[y]]
        closing_ok = labeled or current != cycle_start
        if closing_ok:
            tau0[current] = cycle_start
            if not boundary_too_long():
                nxt = next((x for x in range(size) if not used[x]), None)
                if nxt is None:
                    ok = _structure_ok(g, len(positive), tuple(tau0), tau1, labeled)
                    if ok:
                        total += _weighted_labelings(positive, *ok, labeled)
                else:
                    used[nxt] = True
                    rec(nxt, nxt)
                    used[nxt] = False
            tau0[current] = -1
        for y in options:
            tau0[current] = y
            used[y] = True
            if not boundary_too_long():
                rec(cycle_start, y)
            used[y] = False
            tau0[current] = -1

    used[0] = True
    rec(0, 0)
    return total * double_factorial(size - 1)


def isomorphism_classes(g: int, n: int, b: Sequence[int]) -> list[tuple[FatGraph, int]]:
    """Explicit classification of labeled fatgraphs with their ``|Aut|``.

    Only feasible for ``2E <= 6``; used to confirm the orbit-counting
    identity directly.
    """
    positive = [x for x in b if x]
    size = sum(positive)
    labeled = n - len(positive)
    structures = []
    for tau1 in fixed_point_free_involutions(size):
        for tau0 in permutations(range(size)):
            ok = _structure_ok(g, len(positive), tau0, tau1, labeled)
            if not ok:
                continue
            bcyc, vcyc = ok
            for blabels in _boundary_assignments(positive, bcyc):
                for vlabels in _vertex_assignments(vcyc, labeled):
                    structures.append(FatGraph(tuple(tau0), tau1, blabels, vlabels))
    remaining = set(structures)
    classes = []
    group = list(permutations(range(size)))
    while remaining:
        rep = min(remaining, key=lambda s: (s.tau0, s.tau1, s.boundary_labels, s.vertex_labels))
        orbit = {_conjugate(rep, sigma) for sigma in group}
        aut = sum(1 for sigma in group if _conjugate(rep, sigma) == rep)
        remaining -= orbit
        classes.append((rep, aut))
    return classes


def _boundary_assignments(b, bcyc):
    """Per half-edge boundary label for each bijection cycles -> labels with matching lengths."""
    for order in permutations(range(len(bcyc))):
        if all(len(bcyc[order[i]]) == b[i] for i in range(len(b))):
            labels = [0] * sum(len(c) for c in bcyc)
            for i, ci in enumerate(order):
                for x in bcyc[ci]:
                    labels[x] = i + 1
            yield tuple(labels)


def _vertex_assignments(vcyc, labeled):
    size = sum(len(c) for c in vcyc)
    for chosen in permutations(range(len(vcyc)), labeled):
        if any(len(vcyc[i]) == 1 and i not in chosen for i in range(len(vcyc))):
            continue
        labels = [0] * size
        for lab, ci in enumerate(chosen):
            for x in vcyc[ci]:
                labels[x] = lab + 1
        yield tuple(labels)


def _conjugate(fg: FatGraph, sigma: Sequence[int]) -> FatGraph:
    size = len(sigma)
    t0 = [0] * size
    t1 = [0] * size
    bl = [0] * size
    vl = [0] * size
    for x in range(size):
        t0[sigma[x]] = sigma[fg.tau0[x]]
        t1[sigma[x]] = sigma[fg.tau1[x]]
        bl[sigma[x]] = fg.boundary_labels[x]
        vl[sigma[x]] = fg.vertex_labels[x] if fg.vertex_labels else 0
    return FatGraph(tuple(t0), tuple(t1), tuple(bl), tuple(vl) if fg.vertex_labels else ())
