import random

import numpy as np
import pytest
import sympy

from orbkit import linalg as la
from orbkit.scalars import Field

QQ, K5 = Field(1), Field(5)


def random_matrix(rng, rows, cols, F=QQ, density=0.6):
    M = la.zeros((rows, cols), F)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                M[i, j] = F(rng.randint(-4, 4), rng.randint(-2, 2) if F.d != 1 else 0)
    return M


def to_sympy(M):
    return sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in M])


@pytest.mark.parametrize("seed", range(8))
def test_sparse_matmul_matches_dense(seed):
    rng = random.Random(seed)
    a, b, c = (rng.randint(1, 6) for _ in range(3))
    X, Y, Z = random_matrix(rng, a, b, K5), random_matrix(rng, b, c, K5), random_matrix(rng, c, a, K5)
    assert la.array_equal(la.matmul(X, Y, Z), X @ Y @ Z)


def test_matmul_shape_mismatch():
    with pytest.raises(ValueError):
        la.matmul(la.zeros((2, 3), QQ), la.zeros((2, 3), QQ))


@pytest.mark.parametrize("seed", range(8))
def test_rank_and_nullspace_match_sympy(seed):
    rng = random.Random(100 + seed)
    M = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), density=0.4)
    assert la.rank(M) == to_sympy(M).rank()
    N = la.nullspace(M, QQ)
    assert N.shape[1] == M.shape[1] - la.rank(M)
    assert la.is_zero(M @ N)


@pytest.mark.parametrize("seed", range(6))
def test_inverse_and_solve(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(1, 5)
    M = random_matrix(rng, n, n, K5, density=1.0) + la.eye(n, K5) * 9
    Minv = la.inverse(M, K5)
    assert la.array_equal(M @ Minv, la.eye(n, K5))
    b = random_matrix(rng, n, 1, K5, density=1.0).reshape(-1)
    x = la.solve(M, b, K5)
    assert la.array_equal(M @ x, b)


def test_singular_inverse_and_inconsistent_solve():
    M = la.as_field_array([[1, 2], [2, 4]], QQ)
    with pytest.raises(ZeroDivisionError):
        la.inverse(M, QQ)
    assert la.solve(M, la.as_field_array([1, 0], QQ), QQ) is None


def test_rref_pivots():
    M = la.as_field_array([[0, 2, 4], [0, 1, 2], [1, 0, 1]], QQ)
    R, piv = la.rref(M)
    assert piv == [0, 1]
    assert la.array_equal(R, la.as_field_array([[1, 0, 1], [0, 1, 2], [0, 0, 0]], QQ))
    basis, idx = la.column_basis(M)
    assert idx == [0, 1] and basis.shape == (3, 2)


def test_kron_matches_numpy_on_integers():
    x = la.as_field_array([[1, 2], [3, 4]], QQ)
    y = la.as_field_array([[0, 1], [1, 0]], QQ)
    expected = np.kron(np.array([[1, 2], [3, 4]]), np.array([[0, 1], [1, 0]]))
    assert la.array_equal(la.kron(x, y), la.as_field_array(expected, QQ))
