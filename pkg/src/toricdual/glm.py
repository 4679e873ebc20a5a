"""Generalized Lawrence matrices.

A generalized Lawrence matrix is assembled from a base configuration
``a'_1..a'_s`` in Z^d and primitive full-support vectors ``c'_i``.  Each
block lies inside one bouquet and carries the encoding vector ``c'_i``
(blocks may merge into a larger bouquet when the base kernel is small);
every configuration has the same kernel as some such matrix up to a column
permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .bouquet import bouquet_decompose, free_columns
from .errors import HypothesisError
from .exactla import IntMat, Vector, vgcd, xgcd
from .multiset import MultisetConfig


def gcd_combination(c: Sequence[int]) -> Vector:
    """Integers lam with sum(lam[j] * c[j]) == 1.

    Left fold of the extended Euclidean algorithm; at each step the new
    coefficient is taken in the balanced residue range, and once the running
    gcd reaches 1 the remaining coefficients are 0.
    """
    if vgcd(c) != 1:
        raise HypothesisError(f"entries of {tuple(c)} have gcd {vgcd(c)}, not 1", "gcd(c') = 1")
    lam = [0] * len(c)
    g = 0
    for j, cj in enumerate(c):
        if g == 1:
            break
        if cj == 0:
            continue
        if g == 0:
            g = abs(cj)
            lam[j] = 1 if cj > 0 else -1
            continue
        g2, _, y = xgcd(g, cj)
        if g2 == g:
            continue
        step = g // g2
        y %= step
        if 2 * y > step:
            y -= step
        x = (g2 - y * cj) // g
        for t in range(j):
            lam[t] *= x
        lam[j] = y
        g = g2
    return tuple(lam)


@dataclass(frozen=True)
class GlmSpec:
    d: int
    a_prime: tuple[Vector, ...]
    c_prime: tuple[Vector, ...]
    lambdas: tuple[Vector, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "a_prime", tuple(tuple(a) for a in self.a_prime))
        object.__setattr__(self, "c_prime", tuple(tuple(c) for c in self.c_prime))
        if not self.lambdas:
            lams = tuple(gcd_combination(c) if c and vgcd(c) == 1 else () for c in self.c_prime)
        else:
            lams = tuple(tuple(l) for l in self.lambdas)
        object.__setattr__(self, "lambdas", lams)

    @property
    def s(self) -> int:
        return len(self.a_prime)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.c_prime)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def p(self) -> int:
        return self.d + self.n - self.s

    def validate(self) -> None:
        if len(self.c_prime) != self.s or len(self.lambdas) != self.s:
            raise HypothesisError("a', c' and lambda lists must have the same length s", "matching lengths")
        for i, a in enumerate(self.a_prime):
            if len(a) != self.d:
                raise HypothesisError(f"a'_{i + 1} has length {len(a)}, expected d = {self.d}", "a'_i in Z^d")
        for i, (c, lam) in enumerate(zip(self.c_prime, self.lambdas)):
            tag = f"c'_{i + 1} = {c}"
            if not c:
                raise HypothesisError(f"{tag} is empty", "m_i >= 1")
            if any(x == 0 for x in c):
                raise HypothesisError(f"{tag} lacks full support", "c'_i has full support")
            if c[0] <= 0:
                raise HypothesisError(f"{tag} has a nonpositive first entry", "c'_i1 > 0")
            if vgcd(c) != 1:
                raise HypothesisError(f"{tag} is not primitive", "c'_i primitive")
            if len(lam) != len(c) or sum(l * x for l, x in zip(lam, c)) != 1:
                raise HypothesisError(
                    f"lambda_{i + 1} = {lam} does not satisfy sum lambda_ij c'_ij = 1", "sum lambda_ij c'_ij = 1"
                )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a_prime": [list(a) for a in self.a_prime],
            "c_prime": [list(c) for c in self.c_prime],
            "lambdas": [list(l) for l in self.lambdas],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GlmSpec":
        a = obj["a_prime"]
        d = obj.get("d", len(a[0]) if a else 0)
        return cls(d, tuple(map(tuple, a)), tuple(map(tuple, obj["c_prime"])),
                   tuple(map(tuple, obj.get("lambdas") or ())))


def build_glm(spec: GlmSpec) -> IntMat:
    spec.validate()
    p, n = spec.p, spec.n
    M = [[0] * n for _ in range(p)]
    col = 0
    row = spec.d
    for a, c, lam in zip(spec.a_prime, spec.c_prime, spec.lambdas):
        m = len(c)
        for t in range(m):
            for r in range(spec.d):
                M[r][col + t] = lam[t] * a[r]
        for t in range(1, m):
            M[row + t - 1][col] = -c[t]
            M[row + t - 1][col + t] = c[0]
        col += m
        row += m - 1
    return IntMat.from_rows(M, cols=n)


def glm_lift(spec: GlmSpec, u: Sequence[int]) -> Vector:
    """Kernel vector (c'_1 u_1, ..., c'_s u_s) of the GLM for u in ker_Z(a')."""
    if len(u) != spec.s:
        raise ValueError(f"expected {spec.s} coordinates, got {len(u)}")
    for r in range(spec.d):
        if sum(a[r] * x for a, x in zip(spec.a_prime, u)):
            raise ValueError(f"{tuple(u)} is not in the kernel of the base configuration")
    return tuple(c * x for cp, x in zip(spec.c_prime, u) for c in cp)


def decompose_to_glm(A: IntMat) -> tuple[GlmSpec, list[int]]:
    """GLM data with the same kernel as ``A``.

    Returns ``(spec, perm)`` where ``A.select_columns(perm)`` and
    ``build_glm(spec)`` have identical integer kernels; ``perm[t]`` is the
    original column placed at GLM position ``t``.
    """
    dec = bouquet_decompose(A)
    perm = [i for b in dec.bouquets for i in b.members]
    spec = GlmSpec(A.rows, tuple(b.a for b in dec.bouquets), tuple(b.block() for b in dec.bouquets))
    return spec, perm


@dataclass(frozen=True)
class SelfDualGlm:
    matrix: IntMat
    spec: GlmSpec
    bouquet_sums: tuple[int, ...]
    base_free_columns: frozenset[int]


def _check_zero_sums(c_prime) -> tuple[int, ...]:
    sums = tuple(sum(c) for c in c_prime)
    for i, sm in enumerate(sums):
        if sm:
            raise HypothesisError(
                f"c'_{i + 1} = {tuple(c_prime[i])} sums to {sm}", "sum_j c'_ij = 0 for every bouquet"
            )
    return sums


def _check_nonpyramidal(a_prime, d) -> frozenset[int]:
    base = IntMat.from_columns(a_prime, rows=d)
    fc = free_columns(base)
    if fc.degree:
        raise HypothesisError(
            f"base configuration a' is {fc.degree}-pyramidal; free columns {sorted(i + 1 for i in fc.indices)}",
            "a'_1..a'_s non-pyramidal",
        )
    return fc.indices


def build_selfdual_nonpyramidal(a_prime, c_prime, lambdas=()) -> SelfDualGlm:
    a_prime = tuple(tuple(a) for a in a_prime)
    d = len(a_prime[0]) if a_prime else 0
    spec = GlmSpec(d, a_prime, tuple(map(tuple, c_prime)), tuple(map(tuple, lambdas)))
    spec.validate()
    sums = _check_zero_sums(spec.c_prime)
    free = _check_nonpyramidal(spec.a_prime, d)
    return SelfDualGlm(build_glm(spec), spec, sums, free)


@dataclass(frozen=True)
class PyramidalFamilySpec:
    k: int
    c_prime_0: Vector
    base: GlmSpec
    multiplicities: tuple[int, ...]

    def full_spec(self) -> GlmSpec:
        d = self.base.d
        eps1 = tuple(int(r == 0) for r in range(d))
        lam0 = tuple(int(t == 0) for t in range(len(self.c_prime_0)))
        return GlmSpec(
            d,
            (eps1, *self.base.a_prime),
            (tuple(self.c_prime_0), *self.base.c_prime),
            (lam0, *self.base.lambdas),
        )

    def validate(self) -> None:
        if self.k < 1:
            raise HypothesisError("k must be at least 1", "k >= 1")
        if len(self.c_prime_0) != self.k or self.c_prime_0[0] != 1:
            raise HypothesisError(
                f"c'_0 = {tuple(self.c_prime_0)} must lie in Z^k with first entry 1", "c'_0 in Z^k, c'_01 = 1"
            )
        self.base.validate()
        for i, a in enumerate(self.base.a_prime):
            if a[0] != 0:
                raise HypothesisError(f"a'_{i + 1} = {a} has nonzero first coordinate", "a'_i = (0,*,...,*)")
        _check_zero_sums(self.base.c_prime)
        n = self.k + self.base.n
        if len(self.multiplicities) != n:
            raise HypothesisError(f"need {n} multiplicities, got {len(self.multiplicities)}", "one per column")
        if any(x < 0 for x in self.multiplicities) or sum(self.multiplicities) != self.k:
            raise HypothesisError(
                f"multiplicities must be nonnegative and sum to k = {self.k}", "sum k_i = k"
            )

    @classmethod
    def from_json(cls, obj: dict) -> "PyramidalFamilySpec":
        return cls(int(obj["k"]), tuple(obj["c_prime_0"]), GlmSpec.from_json(obj), tuple(obj["multiplicities"]))


def build_selfdual_family(spec: PyramidalFamilySpec) -> MultisetConfig:
    spec.validate()
    _check_nonpyramidal(spec.base.a_prime, spec.base.d)
    C = build_glm(spec.full_spec())
    cols = C.columns()
    if len(set(cols)) != len(cols):
        raise HypothesisError("assembled ground matrix has repeated columns", "ground columns distinct")
    return MultisetConfig(C, tuple(spec.multiplicities))
