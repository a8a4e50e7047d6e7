"""Independent oracles used to derive goldens.

Nothing here calls the state-sum, splitting or trace code under test; the
helpers read raw cell data or rebuild answers with sympy.
"""
from __future__ import annotations

from itertools import combinations, product

import sympy

from orbkit.scalars import Field


def flat_connection_count(T, n: int) -> int:
    """Number of ``Z/n`` edge colourings that are flat on every triangle of ``T``."""
    edges = sorted(c for c, k in T.cell_dim.items() if k == 1)
    pos = {e: i for i, e in enumerate(edges)}
    constraints = set()
    for cell in T.cells:
        for i, j, k in combinations(range(T.dim + 1), 3):
            constraints.add((pos[cell[(i, j)]], pos[cell[(j, k)]], pos[cell[(i, k)]]))
    count = 0
    for g in product(range(n), repeat=len(edges)):
        if all((g[a] + g[b] - g[c]) % n == 0 for a, b, c in constraints):
            count += 1
    return count


def hom_count(T, n: int) -> int:
    """``|Hom(pi_1, Z/n)|`` for a connected complex: flat connections modulo based gauge."""
    V = sum(1 for k in T.cell_dim.values() if k == 0)
    return flat_connection_count(T, n) // n ** (V - 1)


def dijkgraaf_witten(T, n: int):
    """Untwisted Dijkgraaf-Witten invariant ``|Hom(pi_1, Z/n)| / n`` as a Fraction."""
    return sympy.Rational(hom_count(T, n), n)


def fibonacci_s3() -> object:
    """``D^{-2} = 1 / (1 + phi^2)`` in ``Q(sqrt 5)``."""
    K = Field(5)
    phi = (K(1) + K(0, 1)) / 2
    return 1 / (1 + phi * phi)


def center_dimension(mul) -> int:
    """Dimension of the center of the algebra with structure constants ``mul[i, j, k]``."""
    n = mul.shape[0]
    rows = []
    for j in range(n):  # z e_j = e_j z for z = sum z_i e_i
        for k in range(n):
            rows.append([sympy.Rational(str(mul[i, j, k])) - sympy.Rational(str(mul[j, i, k])) for i in range(n)])
    return n - sympy.Matrix(rows).rank()


def coequalizer_dim(ract, lact, mX: int, mY: int) -> int:
    """``dim(X (x) Y) - rank`` of the balancing relations over all basis elements ``b``."""
    cols = []
    for R, L in zip(ract, lact):
        R = sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in R])
        L = sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in L])
        for x, y in product(range(mX), range(mY)):
            ex = sympy.zeros(mX, 1)
            ex[x] = 1
            ey = sympy.zeros(mY, 1)
            ey[y] = 1
            v = sympy.kronecker_product(R * ex, ey) - sympy.kronecker_product(ex, L * ey)
            cols.append(v)
    if not cols:
        return mX * mY
    return mX * mY - sympy.Matrix.hstack(*cols).rank()


def lattice_tft_blocks(blocks, chi: int):
    """Euler-corrected lattice value ``sum_i (n_i^2 / mu_i)^chi`` for ``prod Mat_{n_i}``, counit ``mu_i tr``.

    The Delta-separable form of a block has counit ``n tr`` and gives ``n^chi``;
    the Euler datum of the block is ``n / mu`` and contributes ``(n / mu)^chi``.
    """
    return sum(sympy.Rational(n * n) ** chi / sympy.Rational(mu) ** chi for n, mu in blocks)


def sphere_defect_circle(mul, counit, psi, actions) -> object:
    """Sphere split by one circle labelled ``X`` into a disc of ``D`` and a disc of the ground field.

    ``sum_ij eps(psi e_i) h^{ij} tr(e_j |X)`` with ``h`` the inverse pairing,
    from raw structure constants with sympy.
    """
    n = len(counit)
    eps = [sympy.Rational(str(c)) for c in counit]
    ps = [sympy.Rational(str(p)) for p in psi]
    M = [[[sympy.Rational(str(mul[i, j, k])) for k in range(n)] for j in range(n)] for i in range(n)]
    g = sympy.Matrix(n, n, lambda i, j: sum(M[i][j][k] * eps[k] for k in range(n)))
    h = g.inv()
    eps_psi = [sum(ps[m] * M[m][i][k] * eps[k] for m in range(n) for k in range(n)) for i in range(n)]
    traces = [sum(sympy.Rational(str(A[x, x])) for x in range(A.shape[0])) for A in actions]
    return sum(eps_psi[i] * h[i, j] * traces[j] for i in range(n) for j in range(n))
