from fractions import Fraction

from posetar.linalg import Field, Mat, QQ, span_basis


def M(rows):
    return Mat.from_int_rows(QQ, rows)


def test_rref_and_rank():
    A = M([[1, 2, 3], [2, 4, 6], [1, 1, 1]])
    assert A.rank() == 2
    R, pivots = A.rref()
    assert pivots == (0, 1)


def test_nullspace_is_kernel():
    A = M([[1, 2, 3], [0, 1, 1]])
    for v in A.nullspace():
        assert all(x == 0 for x in A.apply(v))
    assert len(A.nullspace()) == 1


def test_solve_and_inverse():
    A = M([[2, 1], [1, 1]])
    B = M([[1], [0]])
    X = A.solve(B)
    assert A.mul(X) == B
    inv = A.inverse()
    assert A.mul(inv) == Mat.identity(QQ, 2)


def test_solve_inconsistent():
    A = M([[1, 2], [2, 4]])
    B = M([[1], [0]])
    assert A.solve(B) is None


def test_zero_dim_matrices():
    A = Mat.zero(QQ, 0, 3)
    B = Mat.zero(QQ, 3, 2)
    assert A.mul(B).r == 0
    assert A.rank() == 0
    assert len(Mat.zero(QQ, 2, 0).nullspace()) == 0


def test_prime_field():
    F5 = Field(5)
    A = Mat.from_int_rows(F5, [[2, 1], [1, 1]])
    inv = A.inverse()
    assert A.mul(inv) == Mat.identity(F5, 2)


def test_span_basis():
    b = span_basis(QQ, [(Fraction(1), Fraction(0)), (Fraction(2), Fraction(0))], 2)
    assert b.c == 1
