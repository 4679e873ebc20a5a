"""Brute-force cross-checks that share no code with the fast paths.

Everything here enumerates boxes or subsets directly and is meant for
desk-scale inputs (a handful of columns, small entries).
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .errors import EnumerationInfeasible
from .exactla import IntMat, Vector, canonical

MAX_BOX_POINTS = 3_000_000


def kernel_box(A: IntMat, bound: int) -> list[Vector]:
    """Canonical nonzero v with A v = 0 and every |v_i| <= bound.

    Meet in the middle: partial images of the left half are matched
    against the negated images of the right half.
    """
    n = A.cols
    side = 2 * bound + 1
    half = n // 2
    if side ** max(half, n - half) > MAX_BOX_POINTS:
        raise EnumerationInfeasible("kernel box", side ** n, MAX_BOX_POINTS)
    rng = range(-bound, bound + 1)
    cols = A.columns()

    def image(idx, v):
        return tuple(sum(cols[j][r] * x for j, x in zip(idx, v)) for r in range(A.rows))

    left, right = list(range(half)), list(range(half, n))
    table: dict[Vector, list[Vector]] = {}
    for v in itertools.product(rng, repeat=len(left)):
        table.setdefault(image(left, v), []).append(v)
    out = set()
    for w in itertools.product(rng, repeat=len(right)):
        key = tuple(-x for x in image(right, w))
        for v in table.get(key, ()):
            u = v + w
            if any(u):
                out.add(canonical(u))
    return sorted(out)


def _leq(v, u):
    return all(x == 0 or (x * y > 0 and abs(x) <= abs(y)) for x, y in zip(v, u))


def graver_box(A: IntMat, bound: int) -> list[Vector]:
    """Conformally minimal kernel vectors inside the box.

    Conformal predecessors of a box vector stay in the box, so the answer
    equals the Graver basis restricted to entries of size at most ``bound``.
    """
    K = kernel_box(A, bound)
    signed = K + [tuple(-x for x in u) for u in K]
    return sorted(u for u in K if not any(v != u and _leq(v, u) for v in signed))


def fiber_box(A: IntMat, b: Sequence[int], bound: int) -> list[Vector]:
    """Points z in [0, bound]^n with A z = b, by exhaustive scan."""
    n = A.cols
    if (bound + 1) ** n > MAX_BOX_POINTS:
        raise EnumerationInfeasible("fiber box", (bound + 1) ** n, MAX_BOX_POINTS)
    b = tuple(b)
    return sorted(z for z in itertools.product(range(bound + 1), repeat=n) if A.mul_vec(z) == b)


def _shared_support_components(points):
    comp = list(range(len(points)))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for i, j in itertools.combinations(range(len(points)), 2):
        if any(a and c for a, c in zip(points[i], points[j])):
            comp[find(j)] = find(i)
    return [find(i) for i in range(len(points))]


def minimal_markov_choices(points: Sequence[Vector]) -> list[frozenset[Vector]]:
    """Every set of moves that joins a fiber's components with as few moves as possible.

    A move m joins z and z' when z - z' = ±m.  Subsets of the crossing moves
    of size (components - 1) are tried exhaustively.
    """
    points = list(points)
    label = _shared_support_components(points)
    roots = sorted(set(label))
    if len(roots) < 2:
        return [frozenset()]
    crossing = set()
    for i, j in itertools.combinations(range(len(points)), 2):
        if label[i] != label[j]:
            crossing.add(canonical(tuple(a - c for a, c in zip(points[i], points[j]))))
    pset = set(points)
    out = []
    for S in itertools.combinations(sorted(crossing), len(roots) - 1):
        parent = {r: r for r in roots}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for m in S:
            for k, z in enumerate(points):
                y = tuple(a - c for a, c in zip(z, m))
                if y in pset:
                    parent[find(label[points.index(y)])] = find(label[k])
        if len({find(r) for r in roots}) == 1:
            out.append(frozenset(S))
    return out


def _is_edge(points: Sequence[Vector], p: Vector, q: Vector) -> bool:
    """Is [p, q] an edge of conv(points)?  LP: some c with c.p = c.q > c.z for every other z."""
    import numpy as np
    from scipy.optimize import linprog

    others = [z for z in points if z != p and z != q]
    if not others:
        return True
    n = len(p)
    d = np.subtract(p, q, dtype=float)
    A_ub = np.array([np.subtract(z, p, dtype=float) for z in others])
    res = linprog(np.zeros(n), A_ub=A_ub, b_ub=-np.ones(len(others)), A_eq=d[None, :], b_eq=[0.0],
                  bounds=[(None, None)] * n, method="highs")
    return res.status == 0


def universal_groebner_edges(A: IntMat, G: Sequence[Vector], limit: int = 50_000) -> list[Vector]:
    """Graver elements whose segment [u+, u-] is a primitive edge of its fiber polytope.

    This is the universal Gröbner basis of I_A.  Graver elements are
    primitive, so only the edge condition needs checking.
    """
    from .markov import enumerate_fiber

    out = []
    for u in G:
        p = tuple(max(x, 0) for x in u)
        q = tuple(max(-x, 0) for x in u)
        F = enumerate_fiber(A, A.mul_vec(p), start=p, moves=G, limit=limit)
        if _is_edge(F.points, p, q):
            out.append(u)
    return out
