"""Finite-dimensional algebras with a Frobenius functional.

An :class:`Algebra` is given by structure constants ``c[i, j, k]`` with
``e_i e_j = sum_k c[i, j, k] e_k``.  A :class:`FrobeniusStructure` adds a counit
``eps`` and derives everything else from it: the pairing ``g[i, j] = eps(e_i e_j)``,
the comultiplication ``Delta(x) = sum_ij ginv[i, j] (x e_i) (x) e_j`` and the
window element ``omega = mu(Delta(1))``.  An optional central element ``psi``
records Euler data (it is ``omega`` for the output of :func:`euler_gamma`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import linalg as la
from .errors import NotAssociative, NotFrobenius, NotSeparable, NotSplitSemisimple
from .polys import eigenvalues_in_field
from .scalars import Field, parse_scalar, sqrt_in_field

__all__ = ["Algebra", "FrobeniusStructure", "FrobeniusReport", "check_frobenius", "window_element",
           "euler_gamma", "window_sqrt", "central_idempotents", "group_algebra", "matrix_algebra",
           "product_algebra", "dual_numbers", "scalar_algebra"]


class Algebra:
    """Unital associative algebra over ``Field(d)`` in a fixed basis."""

    def __init__(self, mul: np.ndarray, unit, F: Field, check: bool = True):
        self.F = F
        self.mul = la.as_field_array(mul, F)
        self.n = self.mul.shape[0]
        if self.mul.shape != (self.n,) * 3:
            raise ValueError(f"structure constants must have shape (n, n, n), got {self.mul.shape}")
        self.unit = la.as_field_array(unit, F)
        if check:
            self.check_axioms()

    def __repr__(self):
        return f"Algebra(dim={self.n}, field={self.F!r})"

    # products -----------------------------------------------------------
    def multiply(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mul)

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> x y`` (columns indexed by basis of y)."""
        return np.einsum("i,ijk->kj", x, self.mul)

    def right_matrix(self, x) -> np.ndarray:
        return np.einsum("j,ijk->ki", x, self.mul)

    def basis(self, i) -> np.ndarray:
        v = la.zeros(self.n, self.F)
        v[i] = self.F(1)
        return v

    def zero(self) -> np.ndarray:
        return la.zeros(self.n, self.F)

    def associator_defect(self):
        """First ``(i, j, k)`` where ``(e_i e_j) e_k != e_i (e_j e_k)``, else None."""
        lhs = np.einsum("ijm,mkl->ijkl", self.mul, self.mul)
        rhs = np.einsum("jkm,iml->ijkl", self.mul, self.mul)
        for idx in product(range(self.n), repeat=3):
            if not la.array_equal(lhs[idx], rhs[idx]):
                return idx
        return None

    def check_axioms(self):
        bad = self.associator_defect()
        if bad is not None:
            raise NotAssociative(f"associativity fails on basis triple {bad}")
        for i in range(self.n):
            e = self.basis(i)
            if not la.array_equal(self.multiply(self.unit, e), e) or \
                    not la.array_equal(self.multiply(e, self.unit), e):
                raise NotAssociative(f"unit does not act as identity on e_{i}")

    def is_central(self, z) -> bool:
        return la.array_equal(self.left_matrix(z), self.right_matrix(z))

    def center_basis(self) -> np.ndarray:
        """Columns span Z(A)."""
        rows = []
        for j in range(self.n):
            # sum_i z_i (c[i,j,k] - c[j,i,k]) = 0 for all k
            rows.append((self.mul[:, j, :] - self.mul[j, :, :]).T)
        M = np.concatenate(rows, axis=0)
        return la.nullspace(M, self.F)

    def inverse_of(self, x):
        """Two-sided inverse of ``x`` or ``None``."""
        L = self.left_matrix(x)
        sol = la.solve(L, self.unit, self.F)
        if sol is None or not la.array_equal(self.multiply(sol, x), self.unit):
            return None
        return sol

    def extend(self, F: Field) -> Algebra:
        return Algebra(np.vectorize(F, otypes=[object])(self.mul), [F(u) for u in self.unit], F, check=False)


@dataclass(frozen=True)
class FrobeniusReport:
    frobenius: bool
    symmetric: bool
    delta_separable: bool
    separable: bool
    window: tuple = field(default=(), compare=False)

    def as_dict(self):
        return {"frobenius": self.frobenius, "symmetric": self.symmetric,
                "delta_separable": self.delta_separable, "separable": self.separable,
                "window": [str(w) for w in self.window]}


class FrobeniusStructure:
    """An algebra together with a nondegenerate functional ``counit``."""

    def __init__(self, algebra: Algebra, counit, psi=None, name: str | None = None):
        self.algebra = algebra
        self.F = algebra.F
        self.counit = la.as_field_array(counit, self.F)
        self.psi = None if psi is None else la.as_field_array(psi, self.F)
        self.name = name
        if self.psi is not None and not algebra.is_central(self.psi):
            raise ValueError("Euler datum psi must be central")
        g = self.pairing
        kernel = la.nullspace(g, self.F)
        if kernel.shape[1]:
            raise NotFrobenius("pairing eps(e_i e_j) is singular", witness=kernel[:, 0])

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"FrobeniusStructure{tag}(dim={self.n}, field={self.F!r})"

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def unit(self):
        return self.algebra.unit

    @cached_property
    def pairing(self) -> np.ndarray:
        return np.einsum("ijk,k->ij", self.algebra.mul, self.counit)

    @cached_property
    def copairing(self) -> np.ndarray:
        """``ginv``; ``Delta(1) = sum_ij ginv[i, j] e_i (x) e_j``."""
        return la.inverse(self.pairing, self.F)

    @cached_property
    def comul(self) -> np.ndarray:
        """``D[k, a, b]`` with ``Delta(e_k) = sum_ab D[k, a, b] e_a (x) e_b``."""
        return np.einsum("kia,ib->kab", self.algebra.mul, self.copairing)

    def comultiply(self, x) -> np.ndarray:
        return np.einsum("k,kab->ab", x, self.comul)

    @cached_property
    def window(self) -> np.ndarray:
        return np.einsum("ab,abk->k", self.comultiply(self.unit), self.algebra.mul)

    @property
    def euler(self) -> np.ndarray:
        """The recorded Euler datum, defaulting to the unit."""
        return self.unit if self.psi is None else self.psi

    def epsilon(self, x):
        return np.dot(x, self.counit)

    def is_symmetric(self) -> bool:
        return la.array_equal(self.pairing, self.pairing.T)

    def is_delta_separable(self) -> bool:
        mu_delta = np.einsum("kab,abm->km", self.comul, self.algebra.mul)
        return la.array_equal(mu_delta, la.eye(self.n, self.F))

    def is_separable(self) -> bool:
        return self.algebra.inverse_of(self.window) is not None

    def with_counit(self, counit, psi=None) -> FrobeniusStructure:
        return FrobeniusStructure(self.algebra, counit, psi=psi, name=self.name)

    def extend(self, F: Field) -> FrobeniusStructure:
        psi = None if self.psi is None else [F(p) for p in self.psi]
        return FrobeniusStructure(self.algebra.extend(F), [F(c) for c in self.counit], psi=psi, name=self.name)

    # serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        mul = [[i, j, k, str(v)] for (i, j, k), v in np.ndenumerate(self.algebra.mul) if v]
        out = {"kind": "algebra", "schema_version": 1, "dim": self.n, "field": self.F.d,
               "unit": [str(u) for u in self.unit], "mul": mul,
               "counit": [str(c) for c in self.counit]}
        if self.psi is not None:
            out["psi"] = [str(p) for p in self.psi]
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict) -> FrobeniusStructure:
        d = int(data.get("field", 1))
        F = Field(d)
        n = int(data["dim"])
        mul = la.zeros((n, n, n), F)
        for i, j, k, v in data["mul"]:
            mul[i, j, k] = parse_scalar(v, d)
        alg = Algebra(mul, [parse_scalar(u, d) for u in data["unit"]], F)
        psi = data.get("psi")
        if psi is not None:
            psi = [parse_scalar(p, d) for p in psi]
        return cls(alg, [parse_scalar(c, d) for c in data["counit"]], psi=psi, name=data.get("name"))


def check_frobenius(algebra: Algebra, counit) -> FrobeniusReport:
    """Verify the Frobenius axioms.  Raises ``NotFrobenius`` with a kernel witness."""
    fs = FrobeniusStructure(algebra, counit)
    return FrobeniusReport(frobenius=True, symmetric=fs.is_symmetric(),
                           delta_separable=fs.is_delta_separable(), separable=fs.is_separable(),
                           window=tuple(fs.window))


def window_element(fs: FrobeniusStructure) -> np.ndarray:
    w = fs.window
    if not fs.algebra.is_central(w):
        raise AssertionError("window element is not central")
    return w


def euler_gamma(fs: FrobeniusStructure) -> FrobeniusStructure:
    """Rescale to the Delta-separable structure ``eps' = eps(- omega)``, recording ``psi = omega``."""
    if not fs.is_symmetric():
        raise NotSeparable("euler_gamma needs a symmetric Frobenius algebra")
    w = window_element(fs)
    if fs.algebra.inverse_of(w) is None:
        raise NotSeparable("window element is not invertible")
    counit = fs.algebra.right_matrix(w).T @ fs.counit
    return FrobeniusStructure(fs.algebra, counit, psi=w, name=fs.name)


def central_idempotents(alg: Algebra) -> list:
    """Primitive central idempotents of a split semisimple algebra.

    Ordered by lexicographically smallest support.  Raises ``NotSplitSemisimple``
    when the centre is not a product of copies of the base field.
    """
    F = alg.F
    Z = alg.center_basis()
    r = Z.shape[1]
    if r == 1:
        return [alg.unit.copy()]
    basis = [Z[:, k] for k in range(r)]
    # coordinates of a central element in the centre basis
    def coords(z):
        return la.solve(Z, z, F)

    def mult_on_center(z):
        return np.stack([coords(alg.multiply(z, b)) for b in basis], axis=1)

    for weights in _generic_weights(r):
        z = sum((w * b for w, b in zip(weights, basis)), alg.zero())
        M = mult_on_center(z)
        roots, split = eigenvalues_in_field(M, F)
        if not split:
            raise NotSplitSemisimple("centre does not split over the field")
        if len(roots) < r:
            continue
        idems = []
        for lam in roots:
            e = alg.unit.copy()
            for mu_ in roots:
                if mu_ != lam:
                    e = alg.multiply(e, (z - mu_ * alg.unit)) * (1 / (lam - mu_))
            idems.append(e)
        for e in idems:
            if not la.array_equal(alg.multiply(e, e), e):
                raise NotSplitSemisimple("centre is not semisimple")
        return sorted(idems, key=_support_key)
    raise NotSplitSemisimple("could not separate the central idempotents")


def _generic_weights(r):
    yield [1 + k for k in range(r)]
    yield [(k + 1) ** 2 for k in range(r)]
    yield [3 ** k for k in range(r)]
    yield [7 ** k + k for k in range(r)]


def _support_key(e):
    support = tuple(i for i, v in enumerate(e) if v)
    return (support, tuple(str(v) for v in e))


def block_coefficients(alg: Algebra, z, idems) -> list:
    """Scalars ``z_i`` with ``z e_i = z_i e_i`` for a central ``z``."""
    out = []
    for e in idems:
        ze = alg.multiply(z, e)
        k = next(i for i, v in enumerate(e) if v)
        c = ze[k] / e[k]
        if not la.array_equal(ze, e * c):
            raise NotSplitSemisimple("central element is not scalar on a block")
        out.append(c)
    return out


def window_sqrt(fs: FrobeniusStructure) -> np.ndarray:
    """Central ``s`` with ``s*s = omega``, nonnegative branch on every block."""
    w = window_element(fs)
    if fs.algebra.inverse_of(w) is None:
        raise NotSeparable("window element is not invertible")
    idems = central_idempotents(fs.algebra)
    coeffs = block_coefficients(fs.algebra, w, idems)
    s = fs.algebra.zero()
    for c, e in zip(coeffs, idems):
        s = s + sqrt_in_field(c) * e
    return s


# ---------------------------------------------------------------------------
# standard constructions used by fixtures and tests

def scalar_algebra(lam=1, F: Field = Field(1)) -> FrobeniusStructure:
    """The field itself with counit ``eps(1) = lam``."""
    mul = la.zeros((1, 1, 1), F)
    mul[0, 0, 0] = F(1)
    return FrobeniusStructure(Algebra(mul, [F(1)], F), [F(lam)], name=f"Q_{lam}")


def group_algebra(order: int, counit_e=1, F: Field = Field(1)) -> FrobeniusStructure:
    """Q[Z/order] with ``eps(e) = counit_e`` and ``eps(g) = 0`` otherwise."""
    mul = la.zeros((order,) * 3, F)
    for i in range(order):
        for j in range(order):
            mul[i, j, (i + j) % order] = F(1)
    unit = [F(1)] + [F(0)] * (order - 1)
    counit = [F(counit_e)] + [F(0)] * (order - 1)
    return FrobeniusStructure(Algebra(mul, unit, F), counit, name=f"Q[Z/{order}]")


def matrix_algebra(n: int, scale=1, F: Field = Field(1)) -> FrobeniusStructure:
    """Mat_n with counit ``scale * trace``; basis E_ij at index ``i*n + j``."""
    dim = n * n
    mul = la.zeros((dim,) * 3, F)
    for i, j, k in product(range(n), repeat=3):
        mul[i * n + j, j * n + k, i * n + k] = F(1)
    unit = [F(1) if i == j else F(0) for i in range(n) for j in range(n)]
    counit = [F(scale) if i == j else F(0) for i in range(n) for j in range(n)]
    return FrobeniusStructure(Algebra(mul, unit, F), counit, name=f"Mat_{n}")


def product_algebra(counits, F: Field = Field(1)) -> FrobeniusStructure:
    """``Q x ... x Q`` with counit values ``counits`` on the orthogonal idempotents."""
    r = len(counits)
    mul = la.zeros((r, r, r), F)
    for i in range(r):
        mul[i, i, i] = F(1)
    return FrobeniusStructure(Algebra(mul, [F(1)] * r, F), [F(c) for c in counits], name=f"Q^{r}")


def dual_numbers(F: Field = Field(1)) -> FrobeniusStructure:
    """``Q[x]/(x^2)`` with ``eps(1) = 0``, ``eps(x) = 1``."""
    mul = la.zeros((2, 2, 2), F)
    mul[0, 0, 0] = F(1)
    mul[0, 1, 1] = F(1)
    mul[1, 0, 1] = F(1)
    return FrobeniusStructure(Algebra(mul, [F(1), F(0)], F), [F(0), F(1)], name="Q[x]/(x^2)")
