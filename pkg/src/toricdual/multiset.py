"""Multiset configurations: distinct ground columns plus repetition counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import HypothesisError
from .exactla import IntMat, Vector


@dataclass(frozen=True)
class MultisetConfig:
    """Ground column ``i`` appears ``mult[i] + 1`` times; copies are adjacent."""

    ground: IntMat
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.mult) != self.ground.cols:
            raise ValueError(
                f"multiplicity vector has length {len(self.mult)}, ground has {self.ground.cols} columns"
            )
        if any(k < 0 for k in self.mult):
            raise ValueError("multiplicities must be nonnegative")
        cols = self.ground.columns()
        if len(set(cols)) != len(cols):
            raise HypothesisError("ground columns must be pairwise distinct", "a_i != a_j for i != j")

    @classmethod
    def plain(cls, ground: IntMat) -> "MultisetConfig":
        return cls(ground, (0,) * ground.cols)

    @classmethod
    def fold(cls, A: IntMat) -> tuple["MultisetConfig", list[int]]:
        """Collapse repeated columns of ``A``.

        Returns the multiset and, for every column of ``A``, its position in
        the assembled matrix (repeats become adjacent).
        """
        order: list[Vector] = []
        where: dict[Vector, list[int]] = {}
        for j, c in enumerate(A.columns()):
            if c not in where:
                where[c] = []
                order.append(c)
            where[c].append(j)
        ground = IntMat.from_columns(order, rows=A.rows) if order else IntMat.zeros(A.rows, 0)
        M = cls(ground, tuple(len(where[c]) - 1 for c in order))
        position = [0] * A.cols
        for gi, c in enumerate(order):
            start = M.block_start(gi)
            for t, j in enumerate(where[c]):
                position[j] = start + t
        return M, position

    @property
    def n(self) -> int:
        return self.ground.cols

    @property
    def k(self) -> int:
        return sum(self.mult)

    @property
    def size(self) -> int:
        return self.n + self.k

    def block_start(self, i: int) -> int:
        return i + sum(self.mult[:i])

    def blocks(self) -> list[range]:
        out = []
        start = 0
        for k in self.mult:
            out.append(range(start, start + k + 1))
            start += k + 1
        return out

    def index(self, i: int, t: int) -> int:
        """Assembled column of copy ``t`` (0-based) of ground column ``i``."""
        if not 0 <= t <= self.mult[i]:
            raise IndexError((i, t))
        return self.block_start(i) + t

    def assembled(self) -> IntMat:
        cols = self.ground.columns()
        return IntMat.from_columns(
            [cols[i] for i in range(self.n) for _ in range(self.mult[i] + 1)],
            rows=self.ground.rows,
        )

    def project(self, u: Sequence[int]) -> Vector:
        """Sum each block: the map from ker_Z(A) onto ker_Z(C)."""
        if len(u) != self.size:
            raise ValueError("length mismatch")
        return tuple(sum(u[j] for j in blk) for blk in self.blocks())

    def repeated(self) -> list[int]:
        return [i for i, k in enumerate(self.mult) if k]
