import sympy
from conftest import invertible_matrices, scalars
from hypothesis import given
from hypothesis import strategies as st

from leibniz import Matrix, ONE, ZERO, Scalar
from leibniz.linalg import det, det_of_family, inverse, rank, rank_nullspace, rref, solve, span_basis

from test_exactnum import to_sympy


def sym(m):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m.entries])


def matrices(rows, cols):
    return st.lists(scalars, min_size=rows * cols, max_size=rows * cols).map(
        lambda xs: Matrix([xs[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols))


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: matrices(r, c))))
def test_rank_and_kernel_match_sympy(m):
    r, kernel = rank_nullspace(m)
    assert r == sym(m).rank()
    assert len(kernel) == m.cols - r
    for v in kernel:
        assert all(x == ZERO for x in m.apply(v))


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_matches_sympy(m):
    assert to_sympy(det(m)) == sympy.expand(sym(m).det())


@given(st.integers(1, 4).flatmap(invertible_matrices))
def test_inverse(m):
    n = m.rows
    assert m @ inverse(m) == Matrix.identity(n)
    assert inverse(m) @ m == Matrix.identity(n)


@given(st.integers(1, 4).flatmap(lambda r: matrices(r, 3)), st.lists(scalars, min_size=3, max_size=3))
def test_solve_consistent_system(m, x):
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


def test_solve_inconsistent():
    m = Matrix([[1, 1], [2, 2]])
    assert solve(m, [1, 3]) is None


def test_rref_shape():
    m = Matrix([[0, 2, 4], [1, 1, 1], [1, 2, 3]])
    r, piv = rref(m)
    assert piv == [0, 1]
    assert r.row(0)[0] == ONE and r.row(1)[1] == ONE
    assert rank(m) == 2


def test_span_basis_dedupes():
    basis, piv = span_basis([(ONE, ZERO), (Scalar(2), ZERO), (ZERO, ZERO)], 2)
    assert len(basis) == 1 and piv == [0]


def test_det_of_family_matches_pointwise():
    b1 = Matrix([[1, 0], [0, -1]])
    b2 = Matrix([[0, 1], [1, 0]])
    p = det_of_family([b1, b2])
    for x, y in [(1, 2), (3, -1), (0, 5)]:
        assert p.evaluate([Scalar(x), Scalar(y)]) == det(b1.scale(x) + b2.scale(y))


def test_matrix_basics():
    m = Matrix([[1, 2], [3, 4]])
    assert m.T == Matrix([[1, 3], [2, 4]])
    assert (m - m).is_zero()
    assert Matrix.from_columns([(1, 3), (2, 4)]) == m
    assert Matrix.from_json(m.to_json()) == m
    assert Matrix.diag([1, 1]) == Matrix.identity(2)
