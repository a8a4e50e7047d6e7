"""Oriented Eilenberg-Watts: separable symmetric Frobenius algebras <-> Calabi-Yau data.

``ew_forward`` splits ``A`` into blocks ``Mat_{n_i}``, realises one simple module
per block as a minimal left ideal ``A x`` and takes as trace scalar the block
coefficient of the Euler-corrected right trace of that module, viewed as a
1-morphism out of the ground field.  A block ``Mat_n`` with counit ``mu tr``
thereby gets ``lambda = mu^2 / n^3``; ``ew_inverse`` recovers ``mu`` as the
square root of ``lambda n^3`` and fails when that root is missing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .bimodules import Bimodule, trace_and_qdim
from .errors import NotSeparable, NotSplitSemisimple
from .frobenius import Algebra, FrobeniusStructure, central_idempotents, scalar_algebra
from .fusioncat import CYCategoryData
from .scalars import Field, sqrt_in_field

__all__ = ["SimpleDecomposition", "decompose", "simple_module", "ew_forward", "ew_inverse",
           "ew_roundtrip_check", "block_algebra"]

TRACE_CONVENTIONS = ("euler", "few")


@dataclass
class SimpleDecomposition:
    algebra: FrobeniusStructure
    central_idempotents: list
    blocks: list  # n_i with block i isomorphic to Mat_{n_i}
    generators: list  # x_i with A x_i a simple module in block i

    @property
    def simple_module_dims(self) -> list:
        return list(self.blocks)

    def verify(self) -> bool:
        A = self.algebra.algebra
        total = sum(self.central_idempotents, A.zero())
        if not la.array_equal(total, A.unit):
            return False
        for i, e in enumerate(self.central_idempotents):
            for j, f in enumerate(self.central_idempotents):
                want = e if i == j else A.zero()
                if not la.array_equal(A.multiply(e, f), want):
                    return False
        return sum(n * n for n in self.blocks) == A.n


def _left_ideal(A: Algebra, x) -> np.ndarray:
    """Basis (columns) of ``A x``."""
    basis, _ = la.column_basis(A.right_matrix(x))
    return basis


def decompose(fs: FrobeniusStructure) -> SimpleDecomposition:
    """Blocks and simple-module generators; raises ``NotSplitSemisimple``."""
    if not fs.is_separable():
        raise NotSeparable(f"{fs!r} is not separable")
    A = fs.algebra
    idems = central_idempotents(A)
    blocks, gens = [], []
    for e in idems:
        dim_block = la.rank(A.left_matrix(e))
        n = math.isqrt(dim_block)
        if n * n != dim_block:
            raise NotSplitSemisimple(f"block of dimension {dim_block} is not a matrix algebra over the field")
        gens.append(_minimal_generator(A, e, n))
        blocks.append(n)
    return SimpleDecomposition(fs, idems, blocks, gens)


def _minimal_generator(A: Algebra, e, n: int):
    """An element ``x`` of the block ``A e`` with ``dim A x = n``.

    Candidates are ``e e_j`` and products ``e e_j e_k``; the first with the
    right ideal dimension wins, otherwise the block is not split.
    """
    cands = [A.multiply(e, A.basis(j)) for j in range(A.n)]
    cands += [A.multiply(c, A.basis(k)) for c in cands for k in range(A.n)]
    for x in cands:
        if not la.is_zero(x) and _left_ideal(A, x).shape[1] == n:
            return x
    raise NotSplitSemisimple("no minimal left ideal found among basis products")


def simple_module(fs: FrobeniusStructure, x) -> Bimodule:
    """``A x`` as an ``A``-field bimodule (a 1-morphism out of the ground field)."""
    A = fs.algebra
    F = fs.F
    Bv = _left_ideal(A, x)
    k = Bv.shape[1]
    _, rows = la.rref(Bv.T)
    Rinv = la.inverse(Bv[rows, :], F)
    lact = [Rinv @ (A.left_matrix(A.basis(j)) @ Bv)[rows, :] for j in range(A.n)]
    unit_alg = scalar_algebra(1, F)
    return Bimodule(fs, unit_alg, lact, [la.eye(k, F)], name="simple")


def _block_coefficient(z, e, A: Algebra):
    """``c`` with ``z e = c e``."""
    ze = A.multiply(z, e)
    k = next(i for i, v in enumerate(e) if v)
    c = ze[k] / e[k]
    if not la.array_equal(ze, e * c):
        raise NotSplitSemisimple("trace element is not scalar on its block")
    return c


def ew_forward(fs: FrobeniusStructure, convention: str = "euler") -> CYCategoryData:
    """Calabi-Yau data of ``A``-Mod: one simple per block with its trace scalar.

    ``convention="few"`` reports ``eps`` of a primitive idempotent instead (the
    trace scaled by ``lambda`` rather than ``lambda^2``), kept for comparison.
    """
    if convention not in TRACE_CONVENTIONS:
        raise ValueError(f"unknown trace convention {convention!r}")
    dec = decompose(fs)
    A = fs.algebra
    traces = []
    for e, x in zip(dec.central_idempotents, dec.generators):
        if convention == "few":
            traces.append(fs.epsilon(_primitive_idempotent(A, x)))
            continue
        M = simple_module(fs, x)
        tr = trace_and_qdim(M)["tr_r"]
        traces.append(_block_coefficient(tr, e, A))
    return CYCategoryData(traces, fs.F.d, dims=list(dec.blocks))


def _primitive_idempotent(A: Algebra, x):
    """Idempotent ``p`` with ``A p = A x``: solve ``p x = x`` inside ``A x``."""
    F = A.F
    Bv = _left_ideal(A, x)
    # p = Bv c with (Bv c) x = x; then p is idempotent because right mult by x is injective on A x
    Rx = A.right_matrix(x)
    c = la.solve(Rx @ Bv, x, F)
    if c is None:
        raise NotSplitSemisimple("left ideal is not generated by an idempotent")
    p = Bv @ c
    if not la.array_equal(A.multiply(p, p), p):
        raise NotSplitSemisimple("left ideal generator does not yield an idempotent")
    return p


def block_algebra(blocks: list, counits: list, F: Field) -> FrobeniusStructure:
    """``prod_i Mat_{n_i}`` with counit ``mu_i tr`` on block ``i``."""
    offs, total = [], 0
    for n in blocks:
        offs.append(total)
        total += n * n
    mul = la.zeros((total,) * 3, F)
    unit = la.zeros(total, F)
    counit = la.zeros(total, F)
    for off, n, mu in zip(offs, blocks, counits):
        for i in range(n):
            unit[off + i * n + i] = F(1)
            counit[off + i * n + i] = F(mu)
            for j in range(n):
                for k in range(n):
                    mul[off + i * n + j, off + j * n + k, off + i * n + k] = F(1)
    return FrobeniusStructure(Algebra(mul, unit, F), counit, name="End(+i)")


def ew_inverse(cy: CYCategoryData) -> FrobeniusStructure:
    """``End(+_i i^{n_i})`` with counit ``mu_i tr``, ``mu_i = sqrt(lambda_i n_i^3)``.

    Raises ``NoSquareRootInField`` when some ``lambda_i n_i^3`` has no root in
    the field of the data.
    """
    cy.check_nondegenerate()
    F = cy.K
    dims = list(cy.dims)
    mus = [sqrt_in_field(F(lam) * (n ** 3)) for lam, n in zip(cy.traces, dims)]
    out = block_algebra(dims, mus, F)
    if not (out.is_symmetric() and out.is_separable()):
        raise NotSeparable("reconstructed algebra is not separable symmetric")
    return out


def ew_roundtrip_check(fs: FrobeniusStructure, mutate=None) -> bool:
    """``ew_inverse(ew_forward(A))`` versus ``A``: blocks, dimensions, traces, module qdims.

    ``mutate`` may alter the intermediate Calabi-Yau data (used to confirm the
    check detects a changed trace).
    """
    cy = ew_forward(fs)
    orig = CYCategoryData(list(cy.traces), cy.field, dims=list(cy.dims))
    if mutate is not None:
        cy = mutate(cy)
    back = ew_inverse(cy)
    cy2 = ew_forward(back)
    if sorted(zip(orig.dims, orig.traces), key=str) != sorted(zip(cy2.dims, cy2.traces), key=str):
        return False
    d1, d2 = decompose(fs), decompose(back)
    q1 = sorted((str(trace_and_qdim(simple_module(fs, x))["dim_l"]) for x in d1.generators))
    q2 = sorted((str(trace_and_qdim(simple_module(back, x))["dim_l"]) for x in d2.generators))
    return q1 == q2
