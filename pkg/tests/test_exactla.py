import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from toricdual.exactla import (
    IntMat,
    MatrixFormatError,
    allones_in_rowspan,
    canonical,
    format_matrix,
    gale_transform,
    hermite_rows,
    kernel_lattice_basis,
    lattice_contains,
    parse_matrix,
    primitive,
    rank,
    rowspan_functional,
    xgcd,
)


def small_matrices(max_rows=3, max_cols=5, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    ).map(IntMat.from_rows)


def smith_divisors(vectors, n):
    """Nonzero invariant factors of the n x k matrix with the given columns."""
    from sympy.matrices.normalforms import smith_normal_form

    M = sympy.Matrix(n, len(vectors), lambda i, j: vectors[j][i])
    S = smith_normal_form(M, domain=sympy.ZZ)
    return [abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0]


def test_rank_examples(C35):
    assert rank(IntMat.identity(2)) == 2
    assert rank(IntMat.from_rows([[4, 5, 6, 7]])) == 1
    assert rank(C35) == 9
    assert rank(IntMat.zeros(3, 4)) == 0


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == sympy.Matrix(M.to_rows()).rank()


def test_kernel_examples():
    assert kernel_lattice_basis(IntMat.identity(2)).cols == 0
    K = kernel_lattice_basis(IntMat.from_rows([[2, 3]]))
    assert K.cols == 1 and canonical(K.col(0)) == (3, -2)
    A = IntMat.from_rows([[4, 5, 6, 7]])
    K = kernel_lattice_basis(A)
    assert K.rows == 4 and K.cols == 3
    assert not any((A @ K).entries)
    assert smith_divisors(K.columns() and [K.col(j) for j in range(K.cols)], 4) == [1, 1, 1]


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_kernel_is_saturated_basis(M):
    K = kernel_lattice_basis(M)
    assert K.cols == M.cols - rank(M)
    assert not any((M @ K).entries) if K.cols else True
    cols = [K.col(j) for j in range(K.cols)]
    if cols:
        assert all(d == 1 for d in smith_divisors(cols, M.cols))


def test_saturation_by_appending_kernel_vectors(a4567):
    K = kernel_lattice_basis(a4567)
    basis = [K.col(j) for j in range(K.cols)]
    for v in [(5, -4, 0, 0), (1, 3, -2, -1), (0, 0, 7, -6), (7, 0, 0, -4)]:
        assert lattice_contains(basis, v)
    assert not lattice_contains(basis, (1, 0, 0, 0))


def test_kernel_basis_is_deterministic_under_row_permutation():
    A = IntMat.from_rows([[1, 2, 3, 4, 5], [0, 1, 1, 2, 3]])
    B = IntMat.from_rows([[0, 1, 1, 2, 3], [1, 2, 3, 4, 5]])
    assert kernel_lattice_basis(A) == kernel_lattice_basis(B)


def test_gale_examples():
    g = gale_transform(IntMat.from_rows([[1, 1]]))
    assert g.r == 1 and g.rows[0] == tuple(-x for x in g.rows[1]) and any(g.rows[0])
    g = gale_transform(IntMat.identity(2))
    assert g.is_zero(0) and g.is_zero(1)
    g = gale_transform(IntMat.from_rows([[4, 5, 6, 7]]))
    assert not any(g.is_zero(i) for i in range(4))


def test_allones(C35):
    assert not allones_in_rowspan(IntMat.from_rows([[4, 5, 6, 7]]))
    assert allones_in_rowspan(C35)
    assert allones_in_rowspan(IntMat.identity(2))


def test_rowspan_functional():
    A = IntMat.from_rows([[1, 1, 0], [0, 1, 1]])
    w = rowspan_functional(A, [1, 2, 1])
    assert list(w) == [1, 1]
    assert rowspan_functional(A, [1, 0, 0]) is None


def test_helpers():
    for a, b in itertools.product(range(-7, 8), repeat=2):
        g, x, y = xgcd(a, b)
        assert g == sympy.gcd(a, b) and a * x + b * y == g
    assert primitive((4, -6, 0)) == (2, -3, 0)
    assert canonical((0, -2, 1)) == (0, 2, -1)
    assert hermite_rows([(2, 4), (0, 3)]) == [(2, 1), (0, 3)]


def test_parse_and_format_roundtrip():
    text = "# comment\n2 3\n1 2 3\n# inside\n4 5 6\n"
    M = parse_matrix(text)
    assert M.to_rows() == [[1, 2, 3], [4, 5, 6]]
    assert parse_matrix(format_matrix(M)) == M


@pytest.mark.parametrize(
    "text, line",
    [("2 2\n1 2\n3 x\n", 3), ("2 2\n1 2 3\n", 2), ("", 1), ("-1 2\n", 1)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MatrixFormatError) as exc:
        parse_matrix(text)
    assert exc.value.line == line
