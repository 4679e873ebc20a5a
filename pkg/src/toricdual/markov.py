"""Fibers, minimal and universal Markov bases, indispensable elements.

All routines assume a pointed kernel (no nonzero nonnegative kernel
vector), which makes every fiber finite.  Inside a fiber, two points are
joined by moves of strictly smaller degree exactly when they are linked by
a chain of points sharing support; the connected components of that
relation drive everything below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Sequence

from .errors import EnumerationInfeasible, HypothesisError, NotPointedError
from .exactla import IntMat, Vector, canonical, rowspan_functional
from .graver import graver, is_semiconformal_sum, is_strongly_semiconformal_sum, neg_part, pos_part
from .multiset import MultisetConfig

MAX_FIBER = 100_000
MAX_BOX = 200_000


@dataclass(frozen=True)
class Fiber:
    degree: Vector
    points: tuple[Vector, ...]
    components: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.points)

    @property
    def component_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def component_of(self, z: Sequence[int]) -> int:
        k = self.points.index(tuple(z))
        return next(c for c, comp in enumerate(self.components) if k in comp)

    def label(self) -> dict[Vector, int]:
        """Point → component number."""
        return {self.points[k]: c for c, comp in enumerate(self.components) for k in comp}


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def support_components(points: Sequence[Vector]) -> tuple[tuple[int, ...], ...]:
    """Group point indices into chains of pairwise shared support."""
    if not points:
        return ()
    uf = _UnionFind(len(points))
    for i in range(len(points[0])):
        holders = [k for k, z in enumerate(points) if z[i]]
        for k in holders[1:]:
            uf.union(holders[0], k)
    groups: dict[int, list[int]] = {}
    for k in range(len(points)):
        groups.setdefault(uf.find(k), []).append(k)
    return tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: g[0]))


def _make_fiber(b, pts) -> Fiber:
    pts = tuple(sorted(pts))
    return Fiber(tuple(b), pts, support_components(pts))


def positive_grading(A: IntMat) -> tuple[Vector, Vector]:
    """Integer (w, y) with w·A = y and every y_i > 0.

    Exact when the all-ones vector (or a row, up to sign) is in the row
    span; otherwise an LP suggests w, which is then verified exactly.
    """
    candidates = [[1] * A.cols]
    for i in range(A.rows):
        candidates += [list(A.row(i)), [-x for x in A.row(i)]]
    for y in candidates:
        if all(x > 0 for x in y):
            w = rowspan_functional(A, y)
            if w is not None:
                return _integral(w, y)
    from scipy.optimize import linprog

    res = linprog(
        c=[0] * A.rows,
        A_ub=[[-A[i, j] for i in range(A.rows)] for j in range(A.cols)],
        b_ub=[-1] * A.cols,
        bounds=[(None, None)] * A.rows,
        method="highs",
    )
    if res.status == 0:
        w = [Fraction(x).limit_denominator(10**6) for x in res.x]
        y = [sum(wi * A[i, j] for i, wi in enumerate(w)) for j in range(A.cols)]
        if all(x > 0 for x in y):
            return _integral(w, y)
    raise NotPointedError()


def _integral(w, y):
    den = lcm(*(Fraction(x).denominator for x in list(w) + list(y)))
    return tuple(int(Fraction(x) * den) for x in w), tuple(int(Fraction(x) * den) for x in y)


def enumerate_fiber(A: IntMat, b: Sequence[int], *, start: Sequence[int] | None = None,
                    moves: Iterable[Sequence[int]] | None = None, limit: int = MAX_FIBER) -> Fiber:
    """All z in N^n with A z = b.

    With ``start`` (a point of the fiber) and ``moves`` (a Markov basis,
    e.g. the Graver basis) the fiber is explored by breadth-first search;
    otherwise a depth-first branch over coordinates is used, bounded by a
    strictly positive row-span grading.
    """
    b = tuple(b)
    if len(b) != A.rows:
        raise ValueError(f"degree has length {len(b)}, expected {A.rows}")
    if start is not None and moves is not None:
        return _fiber_bfs(A, b, tuple(start), [tuple(m) for m in moves], limit)
    return _fiber_dfs(A, b, limit)


_NUMPY_SAFE = 1 << 60


def _fiber_bfs(A, b, start, moves, limit) -> Fiber:
    if A.mul_vec(start) != b or any(x < 0 for x in start):
        raise ValueError("start is not a point of the fiber")
    signed = moves + [tuple(-x for x in m) for m in moves]
    if signed and max(max(map(abs, m)) for m in signed) < (1 << 40) and max(start, default=0) < (1 << 40):
        pts = _bfs_numpy(start, signed, limit)
        if pts is not None:
            return _make_fiber(b, pts)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for z in frontier:
            for m in signed:
                y = tuple(a + c for a, c in zip(z, m))
                if min(y) >= 0 and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > limit:
            raise EnumerationInfeasible("fiber", f">{limit}", limit)
        frontier = nxt
    return _make_fiber(b, seen)


def _bfs_numpy(start, signed, limit):
    """Vectorised breadth-first search; None if entries grow past int64 comfort."""
    import numpy as np

    n = len(start)
    mv = np.array(signed, dtype=np.int64).reshape(len(signed), n)
    seen = {np.array(start, dtype=np.int64).tobytes()}
    found = [tuple(start)]
    frontier = np.array([start], dtype=np.int64)
    chunk = max(1, 500_000 // max(1, len(signed)))
    while len(frontier):
        fresh = []
        for lo in range(0, len(frontier), chunk):
            cand = (frontier[lo:lo + chunk, None, :] + mv[None, :, :]).reshape(-1, n)
            cand = cand[(cand >= 0).all(axis=1)]
            if len(cand) == 0:
                continue
            if cand.max() >= _NUMPY_SAFE:
                return None
            for row in np.unique(cand, axis=0):
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
        if len(seen) > limit:
            raise EnumerationInfeasible("fiber", f">{limit}", limit)
        found.extend(tuple(int(x) for x in row) for row in fresh)
        frontier = np.array(fresh, dtype=np.int64).reshape(len(fresh), n)
    return found


class FiberCache:
    """Fibers of one matrix explored with one move set, memoised by degree."""

    def __init__(self, A: IntMat, moves: Sequence[Vector], limit: int = MAX_FIBER):
        self.A = A
        self.moves = [tuple(m) for m in moves]
        self.limit = limit
        self._store: dict[Vector, Fiber] = {}

    def at(self, start: Sequence[int]) -> Fiber:
        start = tuple(start)
        b = self.A.mul_vec(start)
        F = self._store.get(b)
        if F is None:
            F = self._store[b] = _fiber_bfs(self.A, b, start, self.moves, self.limit)
        return F


def _fiber_dfs(A, b, limit) -> Fiber:
    w, y = positive_grading(A)
    budget = sum(wi * bi for wi, bi in zip(w, b))
    n, m = A.cols, A.rows
    if budget < 0:
        return _make_fiber(b, [])
    cols = A.columns()
    # sign pattern of each row over the suffix of columns j..n-1
    nonneg = [[all(cols[t][r] >= 0 for t in range(j, n)) for r in range(m)] for j in range(n + 1)]
    nonpos = [[all(cols[t][r] <= 0 for t in range(j, n)) for r in range(m)] for j in range(n + 1)]
    out = []
    z = [0] * n

    def feasible(j, res):
        for r in range(m):
            if res[r] < 0 and nonneg[j][r]:
                return False
            if res[r] > 0 and nonpos[j][r]:
                return False
        return True

    def rec(j, res, bud):
        if j == n:
            if bud == 0 and not any(res):
                out.append(tuple(z))
                if len(out) > limit:
                    raise EnumerationInfeasible("fiber", f">{limit}", limit)
            return
        if not feasible(j, res):
            return
        col, yj = cols[j], y[j]
        for v in range(bud // yj + 1):
            z[j] = v
            rec(j + 1, [res[r] - v * col[r] for r in range(m)], bud - v * yj)
        z[j] = 0

    rec(0, list(b), budget)
    return _make_fiber(b, out)


# ---------------------------------------------------------------- Markov

def _degree(A: IntMat, u) -> Vector:
    return A.mul_vec(pos_part(u))


def betti_fibers(A: IntMat, graver_basis: Sequence[Vector] | None = None,
                 limit: int = MAX_FIBER) -> list[Fiber]:
    """Fibers at Graver degrees that split into two or more components."""
    G = list(graver_basis) if graver_basis is not None else graver(A)
    starts: dict[Vector, Vector] = {}
    for u in G:
        starts.setdefault(_degree(A, u), pos_part(u))
    order = sorted(starts, key=lambda b: (sum(starts[b]), b))
    cache = FiberCache(A, G, limit)
    out = []
    for b in order:
        F = cache.at(starts[b])
        if len(F.components) > 1:
            out.append(F)
    return out


def _spanning_moves(F: Fiber) -> list[Vector]:
    comp = {}
    for c, members in enumerate(F.components):
        for k in members:
            comp[k] = c
    edges = []
    for i, j in itertools.combinations(range(len(F.points)), 2):
        if comp[i] != comp[j]:
            mv = canonical(tuple(a - c for a, c in zip(F.points[i], F.points[j])))
            edges.append((mv, comp[i], comp[j]))
    edges.sort()
    uf = _UnionFind(len(F.components))
    chosen = []
    for mv, ci, cj in edges:
        if uf.union(ci, cj):
            chosen.append(mv)
            if len(chosen) == len(F.components) - 1:
                break
    return chosen


def minimal_markov(A: IntMat, graver_basis: Sequence[Vector] | None = None) -> list[Vector]:
    """One minimal Markov basis.

    For every Betti fiber the components are joined by a spanning tree
    built greedily from the lexicographically smallest connecting moves.
    """
    out = set()
    for F in betti_fibers(A, graver_basis):
        out.update(_spanning_moves(F))
    return sorted(out)


def weighted_spanning_tree_count(sizes: Sequence[int]) -> int:
    """Spanning trees of the complete graph on components, edge i–j weighted |C_i|·|C_j|.

    Determinant of the reduced weighted Laplacian, computed exactly.
    """
    c = len(sizes)
    if c <= 1:
        return 1
    N = sum(sizes)
    L = [[(sizes[i] * (N - sizes[i]) if i == j else -sizes[i] * sizes[j]) for j in range(1, c)]
         for i in range(1, c)]
    return _det(L)


def _det(M: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [row[:] for row in M]
    n = len(a)
    if n == 0:
        return 1
    sgn, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sgn * a[n - 1][n - 1]


def count_minimal_markov(A: IntMat, graver_basis: Sequence[Vector] | None = None) -> int:
    total = 1
    for F in betti_fibers(A, graver_basis):
        total *= weighted_spanning_tree_count(F.component_sizes)
    return total


# ---------------------------------------------------- indispensable / universal

def _box(upper: Sequence[int]):
    return itertools.product(*(range(x + 1) for x in upper))


def semiconformal_witness(A: IntMat, u: Sequence[int], graver_basis: Sequence[Vector],
                          limit: int = MAX_BOX) -> tuple[Vector, Vector] | None:
    """A proper split u = v +_sc w, or None when none exists.

    v⁺ is bounded by u⁺, so v = p - z with p ≤ u⁺ and z in the fiber of A p.
    """
    up = pos_part(u)
    size = 1
    for x in up:
        size *= x + 1
    if size > limit:
        raise EnumerationInfeasible("semiconformal search box", size, limit)
    cache = FiberCache(A, graver_basis)
    for p in _box(up):
        if not any(p):
            continue
        for z in cache.at(p).points:
            v = tuple(a - c for a, c in zip(p, z))
            w = tuple(a - c for a, c in zip(u, v))
            if any(v) and any(w) and is_semiconformal_sum(u, v, w):
                return v, w
    return None


def indispensables(A: IntMat, graver_basis: Sequence[Vector] | None = None,
                   method: str = "search") -> list[Vector]:
    """Kernel vectors with no proper semiconformal decomposition.

    ``method="search"`` runs the bounded semiconformal split search;
    ``method="fiber"`` uses the equivalent test that the fiber of u⁺ is
    exactly {u⁺, u⁻}.
    """
    G = list(graver_basis) if graver_basis is not None else graver(A)
    if method == "search":
        return sorted(u for u in G if semiconformal_witness(A, u, G) is None)
    if method == "fiber":
        cache = FiberCache(A, G)
        out = []
        for u in G:
            if len(cache.at(pos_part(u)).points) == 2:
                out.append(u)
        return sorted(out)
    raise ValueError(f"unknown method {method!r}")


def strongly_semiconformal_chain(A: IntMat, u: Sequence[int], graver_basis: Sequence[Vector],
                                 limit: int = MAX_FIBER, cache: FiberCache | None = None) -> list[Vector] | None:
    """Decompose u through lower-degree steps, or return None if impossible.

    Finds a chain u⁺ = z_0, z_1, ..., z_t = u⁻ inside the fiber of u⁺ with
    consecutive points sharing support; the steps z_k - z_{k+1} sum to u.
    With t = 2 the two steps form a proper strongly semiconformal pair.
    """
    up, un = pos_part(u), neg_part(u)
    cache = cache or FiberCache(A, graver_basis, limit)
    F = cache.at(up)
    src, dst = F.points.index(up), F.points.index(un)
    if F.component_of(up) != F.component_of(un):
        return None
    holders: list[list[int]] = [[] for _ in range(A.cols)]
    for k, z in enumerate(F.points):
        for i, x in enumerate(z):
            if x:
                holders[i].append(k)
    # breadth-first over the shared-support graph, shortest chain first
    prev = {src: None}
    frontier = [src]
    while dst not in prev:
        nxt = []
        for k in frontier:
            for i, x in enumerate(F.points[k]):
                if not x:
                    continue
                for j in holders[i]:
                    if j not in prev:
                        prev[j] = k
                        nxt.append(j)
                holders[i] = []
        frontier = nxt
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    return [tuple(a - c for a, c in zip(F.points[path[t]], F.points[path[t + 1]]))
            for t in range(len(path) - 1)]


def universal_markov(A: IntMat, graver_basis: Sequence[Vector] | None = None) -> list[Vector]:
    """Graver elements with no proper strongly semiconformal decomposition.

    Equivalently u⁺ and u⁻ lie in different components of their fiber.
    """
    G = list(graver_basis) if graver_basis is not None else graver(A)
    cache = FiberCache(A, G)
    out = []
    for u in G:
        F = cache.at(pos_part(u))
        if F.component_of(pos_part(u)) != F.component_of(neg_part(u)):
            out.append(u)
    return sorted(out)


def two_term_ssc_witness(A: IntMat, u: Sequence[int], graver_basis: Sequence[Vector],
                         cache: FiberCache | None = None):
    """A proper two-term split u = v +_ssc w, or None.

    Every such split has the form v = u⁺ - z, w = z - u⁻ for a point z of
    the fiber of u⁺, so scanning that fiber is exhaustive.
    """
    up = pos_part(u)
    cache = cache or FiberCache(A, graver_basis)
    for z in cache.at(up).points:
        v = tuple(a - d for a, d in zip(up, z))
        w = tuple(a - c for a, c in zip(u, v))
        if any(v) and any(w) and is_strongly_semiconformal_sum(u, v, w):
            return v, w
    return None


# ---------------------------------------------------------------- multisets

def _ground_strongly_robust(M: MultisetConfig, ground_graver) -> str:
    """Name the route certifying that every ground Graver element is indispensable."""
    from .selfdual import nonfree_selfdual_certificate

    if nonfree_selfdual_certificate(M.ground):
        return "self-dual non-free ground part"
    if indispensables(M.ground, ground_graver, method="fiber") == sorted(ground_graver):
        return "computed: ground Graver basis is indispensable"
    raise HypothesisError(
        "ground configuration is not strongly robust; the closed form does not apply",
        "ground Graver basis = indispensable set",
    )


def _check_generic_blocks(M: MultisetConfig, G) -> None:
    # a repeated column equal in degree to another lattice point would merge
    # the degree-one fiber with a Graver fiber; the product form then fails
    for u in G:
        for part in (pos_part(u), neg_part(u)):
            if sum(part) == 1 and M.mult[part.index(1)]:
                raise HypothesisError(
                    f"repeated column {part.index(1) + 1} is the degree of Graver element {u}",
                    "degree-one fibers of repeated columns are singletons",
                )


def _lex_smallest_lift(M: MultisetConfig, u) -> Vector:
    # canonical lifts share u's block signs: positive blocks load the last copy,
    # negative blocks the first, which is lexicographically smallest
    out = []
    for ui, k in zip(u, M.mult):
        blk = [0] * (k + 1)
        if ui > 0:
            blk[-1] = ui
        elif ui < 0:
            blk[0] = ui
        out += blk
    return tuple(out)


def minimal_markov_multiset(M: MultisetConfig, ground_graver: Sequence[Vector] | None = None) -> list[Vector]:
    """Closed-form minimal Markov basis of a multiset over a strongly robust ground.

    The degree-one fiber of a repeated column i holds k_i + 1 singleton
    components; every ground Graver element u gives one Betti fiber with two
    components (the lifts of u⁺ and of u⁻).  The moves chosen agree with
    :func:`minimal_markov` on the assembled matrix.
    """
    G = list(ground_graver) if ground_graver is not None else graver(M.ground)
    _ground_strongly_robust(M, G)
    _check_generic_blocks(M, G)
    out = []
    for blk in M.blocks():
        # singletons e_s of one block: Kruskal over the sorted differences
        edges = sorted(canonical(tuple(int(j == s_) - int(j == t_) for j in range(M.size)))
                       for s_, t_ in itertools.combinations(blk, 2))
        uf = _UnionFind(M.size)
        for e in edges:
            s_ = e.index(1)
            t_ = e.index(-1)
            if uf.union(s_, t_):
                out.append(e)
    out += [_lex_smallest_lift(M, u) for u in G]
    return sorted(out)


def count_minimal_markov_multiset_formula(M: MultisetConfig, ground_graver: Sequence[Vector] | None = None) -> int:
    """Number of minimal Markov bases without enumerating any fiber.

    Product of (k_i + 1)^(k_i - 1) over repeated columns and of
    prod_i C(|u_i| + k_i, k_i) over ground Graver elements u.
    """
    G = list(ground_graver) if ground_graver is not None else graver(M.ground)
    _ground_strongly_robust(M, G)
    _check_generic_blocks(M, G)
    total = 1
    for k in M.mult:
        if k:
            total *= (k + 1) ** (k - 1)
    for u in G:
        for ui, k in zip(u, M.mult):
            total *= comb(abs(ui) + k, k)
    return total


@dataclass
class BasisReport:
    """Everything computed about one configuration; missing parts stay None."""

    graver: list[Vector] | None = None
    circuits: list[Vector] | None = None
    minimal_markov: list[Vector] | None = None
    universal_markov: list[Vector] | None = None
    indispensables: list[Vector] | None = None
    markov_count: int | None = None
    robustness: str | None = None

    def check_inclusions(self) -> bool:
        """indispensables ⊆ minimal Markov ⊆ universal Markov ⊆ Graver, where known."""
        chain = [self.indispensables, self.minimal_markov, self.universal_markov, self.graver]
        known = [set(x) for x in chain if x is not None]
        return all(a <= b for a, b in zip(known, known[1:]))
