"""Bouquet decomposition of a configuration.

Columns whose Gale rows are parallel belong to the same bouquet; columns
with a zero Gale row are free and form a single free bouquet.  Each bouquet
carries its index-encoding vector ``c`` and the aggregated column ``a``;
the aggregated columns form the bouquet matrix, whose kernel maps
isomorphically onto the kernel of the configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence

from .exactla import IntMat, Vector, gale_transform, sign

FREE = "free"
MIXED = "mixed"
NON_MIXED = "non-mixed"


@dataclass(frozen=True)
class Bouquet:
    members: tuple[int, ...]
    kind: str
    c: Vector
    a: Vector

    @property
    def c_sum(self) -> int:
        return sum(self.c)

    def block(self) -> Vector:
        """Nonzero entries of ``c`` in member order."""
        return tuple(self.c[i] for i in self.members)


@dataclass(frozen=True)
class BouquetDecomposition:
    n: int
    bouquets: tuple[Bouquet, ...]
    bouquet_matrix: IntMat

    @property
    def s(self) -> int:
        return len(self.bouquets)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b.members) for b in self.bouquets)

    def bouquet_of(self, i: int) -> int:
        for k, b in enumerate(self.bouquets):
            if i in b.members:
                return k
        raise IndexError(i)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "bouquets": [
                {
                    "members": [i + 1 for i in b.members],
                    "kind": b.kind,
                    "c_B": list(b.c),
                    "a_B": list(b.a),
                }
                for b in self.bouquets
            ],
            "bouquet_matrix": self.bouquet_matrix.to_rows(),
        }


class FreeColumns(NamedTuple):
    indices: frozenset[int]
    degree: int

    @property
    def pyramidal(self) -> bool:
        return self.degree > 0


def parallel(g: Sequence[int], h: Sequence[int]) -> bool:
    """Nonzero vectors g, h are rational multiples of each other (cross-ratio test)."""
    if not any(g) or not any(h):
        return False
    if not any(x and y for x, y in zip(g, h)):
        return False
    k = len(g)
    return all(g[t] * h[u] == g[u] * h[t] for t in range(k) for u in range(t + 1, k))


def free_columns(A: IntMat) -> FreeColumns:
    G = gale_transform(A)
    idx = frozenset(i for i in range(A.cols) if G.is_zero(i))
    return FreeColumns(idx, len(idx))


def _encoding_vector(n: int, members: list[int], rows) -> Vector:
    # smallest coordinate that is nonzero on every member's Gale row
    j = next(t for t in range(len(rows[members[0]])) if all(rows[i][t] for i in members))
    g = 0
    for i in members:
        g = gcd(g, rows[i][j])
    eps = sign(rows[min(members)][j])
    c = [0] * n
    for i in members:
        c[i] = eps * rows[i][j] // g
    return tuple(c)


def bouquet_decompose(A: IntMat) -> BouquetDecomposition:
    n = A.cols
    gale = gale_transform(A)
    rows = gale.rows
    free = [i for i in range(n) if gale.is_zero(i)]
    classes: list[list[int]] = []
    for i in range(n):
        if gale.is_zero(i):
            continue
        for cl in classes:
            if parallel(rows[cl[0]], rows[i]):
                cl.append(i)
                break
        else:
            classes.append([i])
    if free:
        classes.append(free)
    classes.sort(key=min)

    cols = A.columns()
    bouquets = []
    for members in classes:
        if gale.is_zero(members[0]):
            c = tuple(1 if i in members else 0 for i in range(n))
            kind = FREE
        else:
            c = _encoding_vector(n, members, rows)
            kind = MIXED if any(x < 0 for x in c) else NON_MIXED
        a = tuple(sum(c[j] * cols[j][r] for j in members) for r in range(A.rows))
        bouquets.append(Bouquet(tuple(members), kind, c, a))
    AB = IntMat.from_columns([b.a for b in bouquets], rows=A.rows) if bouquets else IntMat.zeros(A.rows, 0)
    return BouquetDecomposition(n, tuple(bouquets), AB)


def lift_D(dec: BouquetDecomposition, u: Sequence[int]) -> Vector:
    """Map u in ker_Z(A_B) to c_{B_1} u_1 + ... + c_{B_s} u_s in ker_Z(A)."""
    if len(u) != dec.s:
        raise ValueError(f"expected {dec.s} coordinates, got {len(u)}")
    if any(dec.bouquet_matrix.mul_vec(u)):
        raise ValueError(f"{tuple(u)} is not in the kernel of the bouquet matrix")
    out = [0] * dec.n
    for b, ub in zip(dec.bouquets, u):
        if ub:
            for i in b.members:
                out[i] += b.c[i] * ub
    return tuple(out)
