"""Exact dense linear algebra on numpy object arrays of field elements.

Gaussian elimination picks the first nonzero pivot in row order, so every
routine here is deterministic: the same input always yields bit-identical
bases, which the splitting code relies on.
"""
from __future__ import annotations

import numpy as np

from .scalars import Field, NumberFieldElement

__all__ = ["zeros", "eye", "as_field_array", "rref", "rank", "nullspace", "inverse",
           "solve", "column_basis", "is_zero", "array_equal", "field_of", "kron", "matmul"]


def zeros(shape, F: Field) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    z = F(0)
    out.fill(z)  # elements are immutable, sharing is safe
    return out


def eye(n: int, F: Field) -> np.ndarray:
    out = zeros((n, n), F)
    for i in range(n):
        out[i, i] = F(1)
    return out


def as_field_array(values, F: Field) -> np.ndarray:
    arr = np.array(values, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = F(v)
    return flat.reshape(arr.shape)


def field_of(arr: np.ndarray) -> Field:
    for v in np.asarray(arr, dtype=object).reshape(-1):
        if isinstance(v, NumberFieldElement):
            return Field(v.d)
    return Field(1)


def is_zero(arr) -> bool:
    return all(not v for v in np.asarray(arr, dtype=object).reshape(-1))


def array_equal(x, y) -> bool:
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    return x.shape == y.shape and all(a == b for a, b in zip(x.reshape(-1), y.reshape(-1)))


def kron(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(x, dtype=object), np.asarray(y, dtype=object))


def matmul(*ms) -> np.ndarray:
    """Left-to-right product that skips zero entries, fast on sparse braid and Kronecker factors."""
    out = np.asarray(ms[0], dtype=object)
    for y in ms[1:]:
        out = _matmul2(out, np.asarray(y, dtype=object))
    return out


def _matmul2(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.shape[1] != y.shape[0]:
        raise ValueError(f"shape mismatch {x.shape} @ {y.shape}")
    out = zeros((x.shape[0], y.shape[1]), field_of(x) if x.size else field_of(y))
    xcols = [[(i, v) for i, v in enumerate(x[:, k]) if v] for k in range(x.shape[1])]
    for k, j in zip(*np.nonzero(np.vectorize(bool, otypes=[bool])(y)) if y.size else ((), ())):
        b = y[k, j]
        for i, a in xcols[k]:
            out[i, j] = out[i, j] + a * b
    return out


def rref(M: np.ndarray):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    M = np.asarray(M, dtype=object)
    rows, cols = M.shape
    A = [list(r) for r in M]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                Ar = A[r]
                A[i] = [a - f * b for a, b in zip(A[i], Ar)]
        pivots.append(c)
        r += 1
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = A[i][j]
    return out, pivots


def rank(M) -> int:
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return 0
    return len(rref(M)[1])


def nullspace(M: np.ndarray, F: Field | None = None) -> np.ndarray:
    """Basis of ``{x : M x = 0}`` as the columns of the returned matrix."""
    M = np.asarray(M, dtype=object)
    F = F or field_of(M)
    rows, cols = M.shape
    if rows == 0:
        return eye(cols, F)
    R, piv = rref(M)
    free = [c for c in range(cols) if c not in piv]
    basis = zeros((cols, len(free)), F)
    for k, fc in enumerate(free):
        basis[fc, k] = F(1)
        for i, pc in enumerate(piv):
            basis[pc, k] = -R[i, fc]
    return basis


def inverse(M: np.ndarray, F: Field | None = None) -> np.ndarray:
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    F = F or field_of(M)
    aug = np.concatenate([M, eye(n, F)], axis=1)
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def solve(A: np.ndarray, B: np.ndarray, F: Field | None = None):
    """One solution ``X`` of ``A X = B`` (free variables set to 0) or ``None``."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    vec = B.ndim == 1
    if vec:
        B = B.reshape(-1, 1)
    F = F or field_of(np.concatenate([A.reshape(-1), B.reshape(-1)]))
    rows, cols = A.shape
    aug = np.concatenate([A, B], axis=1)
    R, piv = rref(aug)
    if any(p >= cols for p in piv):
        return None
    X = zeros((cols, B.shape[1]), F)
    for i, pc in enumerate(piv):
        X[pc, :] = R[i, cols:]
    return X.reshape(-1) if vec else X


def column_basis(M: np.ndarray):
    """Pivot columns of ``M``: returns ``(basis_matrix, pivot_indices)``."""
    M = np.asarray(M, dtype=object)
    _, piv = rref(M)
    return M[:, piv], piv
