import pytest
from hypothesis import given, settings, strategies as st

from dorroh.errors import InputError
from dorroh.fields import GF, QQ
from dorroh.linalg import Matrix, invert, kernel_basis, rank, solve_linear


def test_solve_identity():
    A = Matrix.identity(2, QQ)
    assert solve_linear(A, [3, 4]) == [3, 4]


def test_solve_mod5():
    A = Matrix(1, 1, [[2]], GF(5))
    assert solve_linear(A, [3]) == [4]  # 2*4 = 8 = 3 mod 5


def test_solve_inconsistent():
    A = Matrix(2, 2, [[1, 1], [1, 1]], QQ)
    assert solve_linear(A, [1, 0]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(InputError):
        solve_linear(Matrix.identity(2, QQ), [1, 2, 3])


def test_kernel_forced_up_to_scale():
    A = Matrix(1, 2, [[1, 1]], QQ)
    assert kernel_basis(A) == [[1, -1]]


def test_kernel_trivial():
    assert kernel_basis(Matrix.identity(3, QQ)) == []


def test_kernel_of_zero_matrix():
    A = Matrix.zeros(2, 2, QQ)
    assert kernel_basis(A) == [[1, 0], [0, 1]]


def test_invert_identity():
    A = Matrix.identity(3, QQ)
    assert invert(A) == A


def test_invert_unipotent():
    A = Matrix(2, 2, [[1, 1], [0, 1]], QQ)
    assert invert(A).data == [[1, -1], [0, 1]]


def test_invert_singular():
    assert invert(Matrix(2, 2, [[1, 1], [1, 1]], QQ)) is None


def test_invert_requires_square():
    with pytest.raises(InputError):
        invert(Matrix.zeros(2, 3, QQ))


def _random_matrix(draw, field, rows, cols):
    if field.p is None:
        elems = st.integers(-4, 4)
    else:
        elems = st.integers(0, field.p - 1)
    data = draw(st.lists(st.lists(elems, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return Matrix(rows, cols, data, field)


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(1, 4), st.integers(1, 4), st.booleans())
def test_solve_is_exact(data, rows, cols, over_q):
    field = QQ if over_q else GF(7)
    A = _random_matrix(data.draw, field, rows, cols)
    b = [field.canon(data.draw(st.integers(-4, 4))) for _ in range(rows)]
    x = solve_linear(A, b)
    if x is not None:
        assert A.apply(x) == [field.canon(v) for v in b]


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(1, 4), st.integers(1, 4), st.booleans())
def test_kernel_vectors_are_exact_and_independent(data, rows, cols, over_q):
    field = QQ if over_q else GF(7)
    A = _random_matrix(data.draw, field, rows, cols)
    basis = kernel_basis(A)
    zero = [0] * rows
    for v in basis:
        assert A.apply(v) == zero
        lead = next(x for x in v if x != 0)
        assert lead == 1
    if basis:
        B = Matrix.from_columns(basis, field)
        assert rank(B) == len(basis)
    assert len(basis) == cols - rank(A)


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(1, 4), st.booleans())
def test_inverse_is_two_sided(data, n, over_q):
    field = QQ if over_q else GF(7)
    A = _random_matrix(data.draw, field, n, n)
    B = invert(A)
    if B is not None:
        assert A.mul(B).is_identity()
        assert B.mul(A).is_identity()
    else:
        assert rank(A) < n
