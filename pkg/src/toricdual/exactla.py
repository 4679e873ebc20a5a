"""Exact integer linear algebra.

Everything here works on Python ints, so there is no overflow and no
floating point.  Matrices are small and dense; vectors are plain tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMat:
    """Dense integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> "IntMat":
        data = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not data:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(data), cols, tuple(x for r in data for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMat":
        if rows is None:
            if not columns:
                raise ValueError("cannot infer row count of an empty matrix")
            rows = len(columns[0])
        return cls.from_rows(
            ([columns[j][i] for j in range(len(columns))] for i in range(rows)),
            cols=len(columns),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMat":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMat":
        return IntMat.from_rows(self.columns(), cols=self.rows)

    def select_columns(self, idx: Sequence[int]) -> "IntMat":
        return IntMat.from_rows(([r[j] for j in idx] for r in self.to_rows()), cols=len(idx))

    def append_row(self, row: Sequence[int]) -> "IntMat":
        return IntMat.from_rows([*self.to_rows(), list(row)], cols=self.cols)

    def mul_vec(self, v: Sequence[int]) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != {self.cols} columns")
        return tuple(
            sum(a * b for a, b in zip(self.row(i), v) if b) for i in range(self.rows)
        )

    def __matmul__(self, other: "IntMat") -> "IntMat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ocols = other.columns()
        return IntMat.from_rows(
            ([sum(a * b for a, b in zip(self.row(i), c)) for c in ocols] for i in range(self.rows)),
            cols=other.cols,
        )

    def __str__(self) -> str:
        return format_matrix(self)


class GaleRows(NamedTuple):
    n: int
    r: int
    rows: tuple[Vector, ...]

    def is_zero(self, i: int) -> bool:
        return not any(self.rows[i])


# ---------------------------------------------------------------- vectors

def vgcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    g = vgcd(v)
    if g in (0, 1):
        return tuple(v)
    return tuple(x // g for x in v)


def canonical(v: Sequence[int]) -> Vector:
    """Representative of the pair {v, -v} whose first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def sign(x: int) -> int:
    return (x > 0) - (x < 0)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ------------------------------------------------------------ elimination

def rank(M: IntMat) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = M.to_rows()
    m, n = M.rows, M.cols
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            ai = a[i]
            ar = a[r]
            for j in range(c, n):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
        prev = p
        r += 1
        if r == m:
            break
    return r


def _combine(a: list[int], b: list[int], c: int, start: int = 0) -> None:
    """Unimodular row operation leaving gcd(a[c], b[c]) in a[c] and 0 in b[c]."""
    g, x, y = xgcd(a[c], b[c])
    p, q = a[c] // g, b[c] // g
    for j in range(start, len(a)):
        aj, bj = a[j], b[j]
        a[j] = x * aj + y * bj
        b[j] = -q * aj + p * bj


def echelon(rows: list[list[int]], ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Row-reduce in place over Z on the first ``ncols`` columns.

    Returns the rows (pivot rows first, then rows that vanished on the
    leading block) and the pivot columns.  Only unimodular operations are
    used, so the lattice spanned by the rows is unchanged.
    """
    if not rows:
        return rows, []
    width = len(rows[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(width):
        nz = [i for i in range(r, len(rows)) if rows[i][c]]
        if not nz:
            continue
        i0 = min(nz, key=lambda i: abs(rows[i][c]))
        rows[r], rows[i0] = rows[i0], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                if rows[i][c] % rows[r][c] == 0:
                    q = rows[i][c] // rows[r][c]
                    ri, rr = rows[i], rows[r]
                    for j in range(c, len(ri)):
                        ri[j] -= q * rr[j]
                else:
                    _combine(rows[r], rows[i], c)
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def hermite_rows(vectors: Iterable[Sequence[int]]) -> list[Vector]:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Pivots are positive and the entries above each pivot lie in
    ``[0, pivot)``.  Zero rows are dropped.
    """
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    rows, pivots = echelon(rows)
    rows = rows[:len(pivots)]
    for k, c in enumerate(pivots):
        p = rows[k][c]
        for i in range(k):
            q = rows[i][c] // p
            if q:
                ri, rk = rows[i], rows[k]
                for j in range(c, len(ri)):
                    ri[j] -= q * rk[j]
    return [tuple(r) for r in rows]


def kernel_lattice_basis(M: IntMat) -> IntMat:
    """n x (n - r) matrix whose columns are a basis of the saturated lattice ker_Z(M).

    The basis is the row Hermite normal form of the kernel lattice, written
    as columns, so the output does not depend on how it was found.
    """
    n = M.cols
    aug = [list(M.col(j)) + [int(i == j) for i in range(n)] for j in range(n)]
    aug, pivots = echelon(aug, ncols=M.rows)
    kern = [row[M.rows:] for row in aug[len(pivots):]]
    basis = hermite_rows(kern)
    return IntMat.from_columns(basis, rows=n) if basis else IntMat.zeros(n, 0)


def gale_transform(A: IntMat) -> GaleRows:
    K = kernel_lattice_basis(A)
    return GaleRows(A.cols, A.cols - K.cols, tuple(K.row(i) for i in range(A.cols)))


def allones_in_rowspan(A: IntMat) -> bool:
    if A.cols == 0:
        return True
    return rank(A) == rank(A.append_row([1] * A.cols))


def lattice_contains(basis: Iterable[Sequence[int]], v: Sequence[int]) -> bool:
    """Is ``v`` an integer combination of ``basis``?"""
    H = hermite_rows(basis)
    w = list(v)
    for h in H:
        c = next(j for j, x in enumerate(h) if x)
        if w[c] % h[c]:
            return False
        q = w[c] // h[c]
        if q:
            for j in range(c, len(w)):
                w[j] -= q * h[j]
    return not any(w)


def rowspan_functional(A: IntMat, target: Sequence[int]):
    """Rational w with w·A = target, or None when target is not in the row span."""
    from fractions import Fraction

    m, n = A.rows, A.cols
    # solve A^T w = target by Gauss-Jordan over Q
    aug = [[Fraction(A[i, j]) for i in range(m)] + [Fraction(target[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][m] for i in range(r, n)):
        return None
    w = [Fraction(0)] * m
    for k, c in enumerate(piv_cols):
        w[c] = aug[k][m]
    return w


# -------------------------------------------------------------- text I/O

def parse_matrix(text: str) -> IntMat:
    """Parse ``rows cols`` followed by row-major integers; ``#`` starts a comment line."""
    tokens: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        tokens.extend((lineno, t) for t in s.split())
    if len(tokens) < 2:
        raise MatrixFormatError("missing 'rows cols' header", 1)
    values = []
    for lineno, t in tokens:
        try:
            values.append(int(t))
        except ValueError:
            raise MatrixFormatError(f"not an integer: {t!r}", lineno) from None
    m, n = values[0], values[1]
    if m < 0 or n < 0:
        raise MatrixFormatError("negative dimension", tokens[0][0])
    body = values[2:]
    if len(body) != m * n:
        where = tokens[-1][0] if tokens else 1
        raise MatrixFormatError(f"expected {m * n} entries, found {len(body)}", where)
    return IntMat(m, n, tuple(body))


def format_matrix(M: IntMat) -> str:
    lines = [f"{M.rows} {M.cols}"]
    if M.rows and M.cols:
        width = max(len(str(x)) for x in M.entries)
        lines += [" ".join(str(x).rjust(width) for x in M.row(i)) for i in range(M.rows)]
    return "\n".join(lines) + "\n"


class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
