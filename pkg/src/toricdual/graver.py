"""Graver bases, circuits and conformality predicates.

Kernel vectors are plain integer tuples; every returned set holds one
representative per ``{u, -u}`` pair (first nonzero entry positive) and is
sorted lexicographically.
"""

from __future__ import annotations

import heapq
import itertools
from math import comb
from typing import Iterable, Sequence

from . import kernels
from .bouquet import bouquet_decompose, lift_D
from .errors import EnumerationInfeasible, NotPointedError
from .exactla import IntMat, Vector, canonical, gale_transform, kernel_lattice_basis, primitive, rank
from .multiset import MultisetConfig

#: refuse to list a multiset Graver basis larger than this
MAX_GRAVER_ENUMERATION = 200_000


def pos_part(u: Sequence[int]) -> Vector:
    return tuple(x if x > 0 else 0 for x in u)


def neg_part(u: Sequence[int]) -> Vector:
    return tuple(-x if x < 0 else 0 for x in u)


def conformal_leq(v: Sequence[int], u: Sequence[int]) -> bool:
    """v ⊑ u: same sign wherever v is nonzero and |v_i| <= |u_i|."""
    return all(x == 0 or (x * y > 0 and abs(x) <= abs(y)) for x, y in zip(v, u))


def is_conformal_sum(u, v, w) -> bool:
    if any(a != b + c for a, b, c in zip(u, v, w)):
        return False
    return (all(a == b + c for a, b, c in zip(pos_part(u), pos_part(v), pos_part(w)))
            and all(a == b + c for a, b, c in zip(neg_part(u), neg_part(v), neg_part(w))))


def is_semiconformal_sum(u, v, w) -> bool:
    """u = v + w with v_i > 0 ⇒ w_i >= 0 and w_i < 0 ⇒ v_i <= 0."""
    if any(a != b + c for a, b, c in zip(u, v, w)):
        return False
    return all(not (b > 0 and c < 0) for b, c in zip(v, w))


def is_strongly_semiconformal_sum(u, v, w) -> bool:
    """u = v + w with u⁺ > v⁺ and u⁻ > w⁻ (componentwise, not equal)."""
    if any(a != b + c for a, b, c in zip(u, v, w)):
        return False
    up, vp, un, wn = pos_part(u), pos_part(v), neg_part(u), neg_part(w)
    return (all(a >= b for a, b in zip(up, vp)) and up != vp
            and all(a >= b for a, b in zip(un, wn)) and un != wn)


# ---------------------------------------------------------------- completion

def _norm1(v):
    return sum(abs(x) for x in v)


def _sign_compatible(f, g):
    return all(a * b >= 0 for a, b in zip(f, g))


def _complete(basis: list[Vector], n: int, backend: str | None) -> list[Vector]:
    """Conformal completion of a lattice generating set.

    Critical sums f ± g are taken only for pairs that are not sign
    compatible (otherwise the sum reduces to zero) and are processed in
    increasing 1-norm.  Returns the ⊑-minimal elements found.
    """
    R = kernels.reducer_set(n, backend)
    reps: list[Vector] = []
    seen: set[Vector] = set()
    heap: list = []
    counter = itertools.count()

    def push_pairs(f):
        for g in reps:
            if g is f:
                continue
            if not _sign_compatible(f, g):
                h = tuple(a + b for a, b in zip(f, g))
                heapq.heappush(heap, (_norm1(h), next(counter), h))
            if any(a * b > 0 for a, b in zip(f, g)):
                h = tuple(a - b for a, b in zip(f, g))
                heapq.heappush(heap, (_norm1(h), next(counter), h))

    def insert(v):
        v = canonical(v)
        if v in seen:
            return
        seen.add(v)
        R.add(v)
        reps.append(v)
        push_pairs(v)

    for b in basis:
        r = R.normal_form(b)
        if any(r):
            insert(r)
    while heap:
        _, _, s = heapq.heappop(heap)
        r = R.normal_form(s)
        if any(r):
            insert(r)
    minimal = [v for k, v in enumerate(reps) if R.find_reducer(v, exclude=k) < 0]
    return sorted(minimal)


def _graver_raw(A: IntMat, backend: str | None = None) -> list[Vector]:
    K = kernel_lattice_basis(A)
    basis = [K.col(j) for j in range(K.cols)]
    if not basis:
        return []
    backend = backend or kernels.BACKEND
    try:
        return _complete(basis, A.cols, backend)
    except OverflowError:
        return _complete(basis, A.cols, "python")


def _check_pointed(G: Iterable[Vector]) -> None:
    for v in G:
        if all(x >= 0 for x in v):
            raise NotPointedError(v)


def graver_completion(A: IntMat, backend: str | None = None) -> list[Vector]:
    """Graver basis of ``A`` by critical-pair completion from a kernel basis.

    Raises NotPointedError when the kernel contains a nonzero nonnegative
    vector: some Graver element is then sign-definite.
    """
    G = _graver_raw(A, backend)
    _check_pointed(G)
    return G


def graver_via_bouquet(A: IntMat, backend: str | None = None) -> list[Vector]:
    """Graver basis of ``A`` lifted from the Graver basis of its bouquet matrix."""
    dec = bouquet_decompose(A)
    GB = _graver_raw(dec.bouquet_matrix, backend)
    G = sorted(canonical(lift_D(dec, u)) for u in GB)
    _check_pointed(G)
    return G


def graver(A: IntMat) -> list[Vector]:
    """Default route: the bouquet lift, which never sees large GLM entries."""
    return graver_via_bouquet(A)


# ------------------------------------------------------------------ circuits

def _circuits_by_columns(A: IntMat, r: int) -> set[Vector]:
    out = set()
    for S in itertools.combinations(range(A.cols), r + 1):
        sub = A.select_columns(S)
        if rank(sub) != r:
            continue
        K = kernel_lattice_basis(sub)
        if K.cols != 1:
            continue
        v = [0] * A.cols
        for j, x in zip(S, K.col(0)):
            v[j] = x
        out.add(canonical(primitive(v)))
    return out


def _circuits_by_gale(A: IntMat) -> set[Vector]:
    G = gale_transform(A)
    k = A.cols - G.r
    out = set()
    for S in itertools.combinations(range(A.cols), k - 1):
        sub = IntMat.from_rows([G.rows[i] for i in S], cols=k) if S else IntMat.zeros(0, k)
        if rank(sub) != k - 1:
            continue
        x = kernel_lattice_basis(sub).col(0)
        v = tuple(sum(a * b for a, b in zip(row, x)) for row in G.rows)
        out.add(canonical(primitive(v)))
    return out


def circuits(A: IntMat) -> list[Vector]:
    r = rank(A)
    k = A.cols - r
    if k == 0:
        return []
    if comb(A.cols, k - 1) <= comb(A.cols, r + 1):
        return sorted(_circuits_by_gale(A))
    return sorted(_circuits_by_columns(A, r))


# ---------------------------------------------------------------- multisets

def weak_compositions(total: int, parts: int):
    """Nonnegative ``parts``-tuples summing to ``total``, colexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for head in weak_compositions(total - last, parts - 1):
            yield head + (last,)


def degree_one_moves(M: MultisetConfig) -> list[Vector]:
    """The vectors e_is - e_it (s < t) inside every repeated block."""
    out = []
    for blk in M.blocks():
        for s_, t_ in itertools.combinations(blk, 2):
            v = [0] * M.size
            v[s_], v[t_] = 1, -1
            out.append(tuple(v))
    return out


def fibre_lifts(M: MultisetConfig, u: Sequence[int]):
    """All u' with π(u') = u whose entries in each block share u's sign."""
    per_block = []
    for ui, k in zip(u, M.mult):
        sg = 1 if ui >= 0 else -1
        per_block.append([tuple(sg * x for x in c) for c in weak_compositions(abs(ui), k + 1)])
    for choice in itertools.product(*per_block):
        yield tuple(x for blk in choice for x in blk)


def multiset_graver_count(ground_graver: Iterable[Sequence[int]], mult: Sequence[int]) -> int:
    total = sum(comb(k + 1, 2) for k in mult)
    for u in ground_graver:
        prod = 1
        for ui, k in zip(u, mult):
            prod *= comb(abs(ui) + k, k)
        total += prod
    return total


def multiset_graver(M: MultisetConfig, ground_graver: list[Vector] | None = None,
                    limit: int = MAX_GRAVER_ENUMERATION) -> list[Vector]:
    """Graver basis of the assembled multiset matrix from the ground Graver basis."""
    G = ground_graver if ground_graver is not None else graver(M.ground)
    size = multiset_graver_count(G, M.mult)
    if size > limit:
        raise EnumerationInfeasible("multiset Graver basis", size, limit)
    out = set(degree_one_moves(M))
    for u in G:
        out.update(canonical(v) for v in fibre_lifts(M, u))
    return sorted(out)
