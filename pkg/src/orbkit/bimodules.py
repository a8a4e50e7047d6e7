"""Bimodules over Frobenius algebras, relative tensor products and pivotal data.

A :class:`Bimodule` ``X`` over ``(B, A)`` is a left ``B``, right ``A`` module,
i.e. a 1-morphism ``A -> B``.  Relative products ``X (x)_B Y`` are images of the
idempotent ``p = sum_ij h[i, j] (x . e_i) (x) (e_j . y)`` built from the
Delta-separable copairing ``h`` of the middle algebra; they are returned with
their splitting maps so every coherence map can be written as an explicit
matrix.  Actions are stored as ``lact[b]`` / ``ract[a]``: the ``m x m`` matrices
of ``x -> e_b . x`` and ``x -> x . e_a``.

Euler data follow the rule that every cup or cap carries the recorded ``psi``
of the region it encloses and ``psi^{-1}`` of the region outside it, so Zorro
composites stay untouched while closed loops pick up ``psi_in^2 psi_out^-2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import MiddleAlgebraMismatch, NoIsomorphismFound, NotABimodule, NotAnOrbifoldDatum, NotSeparable
from .frobenius import FrobeniusStructure, euler_gamma
from .scalars import parse_scalar

__all__ = ["Bimodule", "BimoduleMap", "SplitIdempotent", "RelativeProduct", "Adjunction",
           "delta_separable_form", "same_algebra", "regular_bimodule", "relative_tensor", "split_idempotent",
           "adjoint", "trace_and_qdim", "zorro_check", "split_orbifold_datum", "associator",
           "check_pivotality", "dual_map", "tensor_maps", "double_dual_iso"]


def same_algebra(A: FrobeniusStructure, B: FrobeniusStructure) -> bool:
    """Equality of the underlying algebras (structure constants and unit)."""
    if A is B:
        return True
    return (A.F == B.F and A.n == B.n and la.array_equal(A.algebra.mul, B.algebra.mul)
            and la.array_equal(A.unit, B.unit))


def delta_separable_form(fs: FrobeniusStructure) -> FrobeniusStructure:
    """The Delta-separable representative: ``fs`` itself or its Euler normalisation."""
    if fs.is_delta_separable():
        return fs
    if fs.is_symmetric() and fs.is_separable():
        return euler_gamma(fs)
    raise NotSeparable(f"{fs!r} is not separable symmetric")


class Bimodule:
    def __init__(self, left: FrobeniusStructure, right: FrobeniusStructure, lact, ract, name=None,
                 check: bool = True):
        self.left = left
        self.right = right
        self.F = left.F
        self.lact = [la.as_field_array(M, self.F) for M in lact]
        self.ract = [la.as_field_array(M, self.F) for M in ract]
        self.m = self.lact[0].shape[0] if self.lact else self.ract[0].shape[0]
        self.name = name
        if len(self.lact) != left.n or len(self.ract) != right.n:
            raise NotABimodule("one action matrix per basis element is required")
        if check:
            self.check_axioms()

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"Bimodule{tag}(dim={self.m}, left={self.left!r}, right={self.right!r})"

    def left_op(self, b) -> np.ndarray:
        out = la.zeros((self.m, self.m), self.F)
        for c, M in zip(b, self.lact):
            if c:
                out = out + c * M
        return out

    def right_op(self, a) -> np.ndarray:
        out = la.zeros((self.m, self.m), self.F)
        for c, M in zip(a, self.ract):
            if c:
                out = out + c * M
        return out

    def check_axioms(self):
        I = la.eye(self.m, self.F)
        B, A = self.left.algebra, self.right.algebra
        if not la.array_equal(self.left_op(B.unit), I) or not la.array_equal(self.right_op(A.unit), I):
            raise NotABimodule("units must act as the identity")
        for i in range(B.n):
            for j in range(B.n):
                # e_i . (e_j . x) == (e_i e_j) . x
                if not la.array_equal(self.lact[i] @ self.lact[j], self.left_op(B.mul[i, j])):
                    raise NotABimodule(f"left action not associative on ({i}, {j})")
        for i in range(A.n):
            for j in range(A.n):
                # (x . e_i) . e_j == x . (e_i e_j)
                if not la.array_equal(self.ract[j] @ self.ract[i], self.right_op(A.mul[i, j])):
                    raise NotABimodule(f"right action not associative on ({i}, {j})")
        for i in range(B.n):
            for j in range(A.n):
                if not la.array_equal(self.lact[i] @ self.ract[j], self.ract[j] @ self.lact[i]):
                    raise NotABimodule(f"actions do not commute on ({i}, {j})")

    def identity(self) -> BimoduleMap:
        return BimoduleMap(self, self, la.eye(self.m, self.F))

    # serialisation -------------------------------------------------------
    def to_json(self, left_ref=None, right_ref=None) -> dict:
        def entries(mats, left_side):
            out = []
            for b, M in enumerate(mats):
                for (y, x), v in np.ndenumerate(M):
                    if v:
                        out.append([b, x, y, str(v)] if left_side else [x, b, y, str(v)])
            return out
        return {"kind": "bimodule", "schema_version": 1, "field": self.F.d, "dim": self.m,
                "left": left_ref if left_ref is not None else self.left.to_json(),
                "right": right_ref if right_ref is not None else self.right.to_json(),
                "lact": entries(self.lact, True), "ract": entries(self.ract, False)}

    @classmethod
    def from_json(cls, data: dict, resolve=None) -> Bimodule:
        resolve = resolve or (lambda ref: FrobeniusStructure.from_json(ref))
        left = resolve(data["left"])
        right = resolve(data["right"])
        d = left.F.d
        m = int(data["dim"])
        lact = [la.zeros((m, m), left.F) for _ in range(left.n)]
        ract = [la.zeros((m, m), left.F) for _ in range(right.n)]
        for b, x, y, v in data["lact"]:
            lact[b][y, x] = parse_scalar(v, d)
        for x, a, y, v in data["ract"]:
            ract[a][y, x] = parse_scalar(v, d)
        return cls(left, right, lact, ract, name=data.get("name"))


def regular_bimodule(A: FrobeniusStructure) -> Bimodule:
    """``A`` over ``(A, A)``: the unit 1-morphism."""
    lact = [A.algebra.left_matrix(A.algebra.basis(i)) for i in range(A.n)]
    ract = [A.algebra.right_matrix(A.algebra.basis(i)) for i in range(A.n)]
    return Bimodule(A, A, lact, ract, name=f"1_{A.name or 'A'}", check=False)


@dataclass
class BimoduleMap:
    src: Bimodule
    dst: Bimodule
    matrix: np.ndarray

    def is_intertwiner(self) -> bool:
        f = self.matrix
        for L1, L2 in zip(self.src.lact, self.dst.lact):
            if not la.array_equal(f @ L1, L2 @ f):
                return False
        for R1, R2 in zip(self.src.ract, self.dst.ract):
            if not la.array_equal(f @ R1, R2 @ f):
                return False
        return True

    def __matmul__(self, other: BimoduleMap) -> BimoduleMap:
        return BimoduleMap(other.src, self.dst, self.matrix @ other.matrix)


@dataclass
class SplitIdempotent:
    """``p`` on a plain tensor product with ``pi`` onto and ``iota`` out of its image."""
    p: np.ndarray
    pi: np.ndarray
    iota: np.ndarray

    @property
    def image_dim(self) -> int:
        return self.iota.shape[1]

    def verify(self) -> bool:
        F = la.field_of(self.p)
        return (la.array_equal(self.p @ self.p, self.p)
                and la.array_equal(self.pi @ self.iota, la.eye(self.image_dim, F))
                and la.array_equal(self.iota @ self.pi, self.p))


def split_idempotent(p: np.ndarray) -> SplitIdempotent:
    """Split ``p`` through its column space using the first pivot columns."""
    iota, _ = la.column_basis(p)
    r = iota.shape[1]
    F = la.field_of(p)
    if r == 0:
        return SplitIdempotent(p, la.zeros((0, p.shape[0]), F), la.zeros((p.shape[0], 0), F))
    _, rows = la.rref(iota.T)
    pi = la.inverse(iota[rows, :], F) @ p[rows, :]
    return SplitIdempotent(p, pi, iota)


@dataclass
class RelativeProduct:
    """``X (x)_B Y`` as a bimodule together with its splitting data."""
    X: Bimodule
    Y: Bimodule
    Z: Bimodule
    split: SplitIdempotent


def _check_middle(X: Bimodule, Y: Bimodule):
    if not same_algebra(X.right, Y.left):
        raise MiddleAlgebraMismatch(f"right algebra of {X!r} differs from left algebra of {Y!r}")


def relative_tensor(X: Bimodule, Y: Bimodule) -> RelativeProduct:
    """``X (x)_B Y`` for ``X`` over ``(C, B)`` and ``Y`` over ``(B, A)``."""
    _check_middle(X, Y)
    B = delta_separable_form(X.right)
    h = B.copairing
    F = X.F
    p = la.zeros((X.m * Y.m,) * 2, F)
    for i in range(B.n):
        for j in range(B.n):
            if h[i, j]:
                p = p + h[i, j] * la.kron(X.ract[i], Y.lact[j])
    split = split_idempotent(p)
    lact = [split.pi @ la.kron(L, la.eye(Y.m, F)) @ split.iota for L in X.lact]
    ract = [split.pi @ la.kron(la.eye(X.m, F), R) @ split.iota for R in Y.ract]
    name = f"({X.name or 'X'}*{Y.name or 'Y'})"
    Z = Bimodule(X.left, Y.right, lact, ract, name=name, check=False)
    return RelativeProduct(X, Y, Z, split)


def tensor_maps(f: np.ndarray, g: np.ndarray, src: RelativeProduct, dst: RelativeProduct) -> np.ndarray:
    """``f (x)_B g`` between relative products."""
    return dst.split.pi @ la.kron(f, g) @ src.split.iota


def _embed(rp: RelativeProduct, side: str, inner: RelativeProduct) -> np.ndarray:
    """Embedding of ``rp`` into the plain triple product when one factor is ``inner``."""
    F = rp.Z.F
    if side == "left":
        return la.kron(inner.split.iota, la.eye(rp.Y.m, F)) @ rp.split.iota
    return la.kron(la.eye(rp.X.m, F), inner.split.iota) @ rp.split.iota


def associator(left_nested: RelativeProduct, inner_left: RelativeProduct,
               right_nested: RelativeProduct, inner_right: RelativeProduct) -> np.ndarray:
    """Comparison ``(X Y) Z -> X (Y Z)`` assembled from the splitting maps."""
    up = _embed(left_nested, "left", inner_left)
    F = left_nested.Z.F
    down = right_nested.split.pi @ la.kron(la.eye(right_nested.X.m, F), inner_right.split.pi)
    return down @ up


def _dual(X: Bimodule) -> Bimodule:
    """``X^v = X^*`` over ``(A, B)``: ``(a.f)(x) = f(x.a)``, ``(f.b)(x) = f(b.x)``."""
    return Bimodule(X.right, X.left, [R.T for R in X.ract], [L.T for L in X.lact],
                    name=f"{X.name or 'X'}^v", check=False)


@dataclass
class Adjunction:
    """Adjunction data for ``X: A -> B`` (``X`` over ``(B, A)``).

    ``ev: X^v (x)_B X -> A``, ``coev: B -> X (x)_A X^v``,
    ``evt: X (x)_A X^v -> B``, ``coevt: A -> X^v (x)_B X``; each map is a matrix
    on the relative products stored alongside.
    """
    X: Bimodule
    Xd: Bimodule
    A: FrobeniusStructure
    B: FrobeniusStructure
    XdX: RelativeProduct
    XXd: RelativeProduct
    ev: np.ndarray
    coev: np.ndarray
    evt: np.ndarray
    coevt: np.ndarray
    euler: bool

    def maps(self) -> dict:
        return {"ev": BimoduleMap(self.XdX.Z, regular_bimodule(self.A), self.ev),
                "coev": BimoduleMap(regular_bimodule(self.B), self.XXd.Z, self.coev),
                "evt": BimoduleMap(self.XXd.Z, regular_bimodule(self.B), self.evt),
                "coevt": BimoduleMap(regular_bimodule(self.A), self.XdX.Z, self.coevt)}


def _pairing_to_element(fs: FrobeniusStructure, values: np.ndarray) -> np.ndarray:
    """Element ``E`` with ``eps(E e_i) = values[i]`` (columns of ``values`` handled at once)."""
    return la.inverse(fs.pairing.T, fs.F) @ values


def adjoint(X: Bimodule, euler: bool = True) -> Adjunction:
    """Dual bimodule and the four adjunction maps.

    Both algebras are replaced by their Delta-separable forms.  With ``euler``
    the recorded ``psi`` of each algebra is inserted as described in the
    module docstring; otherwise the plain orbifold-completion maps are used.
    """
    A = delta_separable_form(X.right)
    B = delta_separable_form(X.left)
    F = X.F
    m = X.m
    Xd = _dual(X)
    XdX = relative_tensor(Xd, X)
    XXd = relative_tensor(X, Xd)
    if euler:
        psiA, psiB = A.euler, B.euler
        psiA_inv, psiB_inv = A.algebra.inverse_of(psiA), B.algebra.inverse_of(psiB)
        if psiA_inv is None or psiB_inv is None:
            raise NotSeparable("Euler data must be invertible")
    else:
        psiA = psiA_inv = A.unit
        psiB = psiB_inv = B.unit
    I = la.eye(m, F)
    # ev(f (x) x) = psiA^-1 * E  with  eps_A(E a) = f((psiB . x) . a)
    vals = la.zeros((A.n, m * m), F)
    for i in range(A.n):
        vals[i, :] = X.ract[i].reshape(-1)  # entry (f, x) of ract[i] is f(x . e_i)
    plain_ev = _pairing_to_element(A, vals) @ la.kron(I, X.left_op(psiB))
    plain_ev = A.algebra.left_matrix(psiA_inv) @ plain_ev
    ev = plain_ev @ XdX.split.iota
    # coev(b) = pi( sum_x (psiB^-1 b) . x . psiA (x) x^* )
    cols = []
    for j in range(B.n):
        b = B.algebra.multiply(psiB_inv, B.algebra.basis(j))
        op = X.left_op(b) @ X.right_op(psiA)
        cols.append(op.reshape(-1))  # sum_x op[:, x] (x) e^x  ==  vec(op) in (y, x) order
    coev = XXd.split.pi @ np.stack(cols, axis=1)
    # evt(x (x) f) = psiB^-1 * E  with  eps_B(E b) = f(b . (x . psiA))
    vals = la.zeros((B.n, m * m), F)
    R = X.right_op(psiA)
    for i in range(B.n):
        vals[i, :] = (X.lact[i] @ R).T.reshape(-1)  # entry (x, f) = f(e_i . x . psiA)
    plain_evt = B.algebra.left_matrix(psiB_inv) @ _pairing_to_element(B, vals)
    evt = plain_evt @ XXd.split.iota
    # coevt(a) = pi( sum_x x^* (x) psiB . x . (psiA^-1 a) )
    cols = []
    for j in range(A.n):
        a = A.algebra.multiply(psiA_inv, A.algebra.basis(j))
        op = X.left_op(psiB) @ X.right_op(a)
        cols.append(op.T.reshape(-1))  # sum_x e^x (x) op[:, x]
    coevt = XdX.split.pi @ np.stack(cols, axis=1)
    return Adjunction(X, Xd, A, B, XdX, XXd, ev, coev, evt, coevt, euler)


def _unit_left(M: Bimodule, rp: RelativeProduct, inverse: bool) -> np.ndarray:
    """``lambda: R (x)_R M -> M`` (or its inverse) for the regular bimodule ``R``."""
    F = M.F
    R = rp.X.left
    act = np.concatenate([M.lact[i] for i in range(R.n)], axis=1)  # columns (r, x)
    act = act.reshape(M.m, R.n, M.m).transpose(0, 1, 2).reshape(M.m, R.n * M.m)
    if not inverse:
        return act @ rp.split.iota
    return rp.split.pi @ la.kron(R.unit.reshape(-1, 1), la.eye(M.m, F))


def _unit_right(M: Bimodule, rp: RelativeProduct, inverse: bool) -> np.ndarray:
    F = M.F
    R = rp.Y.right
    act = la.zeros((M.m, M.m * R.n), F)
    for x in range(M.m):
        for i in range(R.n):
            act[:, x * R.n + i] = M.ract[i][:, x]
    if not inverse:
        return act @ rp.split.iota
    return rp.split.pi @ la.kron(la.eye(M.m, F), R.unit.reshape(-1, 1))


def zorro_composites(adj: Adjunction) -> dict:
    """The four snake composites as matrices on ``X`` and ``X^v``."""
    X, Xd = adj.X, adj.Xd
    RA, RB = regular_bimodule(adj.A), regular_bimodule(adj.B)
    # the regular bimodules must share the algebras used for splitting
    RA = Bimodule(X.right, X.right, RA.lact, RA.ract, check=False)
    RB = Bimodule(X.left, X.left, RB.lact, RB.ract, check=False)
    IX = la.eye(X.m, X.F)
    out = {}

    # X -> B X -> (X Xd) X -> X (Xd X) -> X A -> X
    BX = relative_tensor(RB, X)
    XXd_X = relative_tensor(adj.XXd.Z, X)
    X_XdX = relative_tensor(X, adj.XdX.Z)
    XA = relative_tensor(X, RA)
    z = _unit_left(X, BX, True)
    z = tensor_maps(adj.coev, IX, BX, XXd_X) @ z
    z = associator(XXd_X, adj.XXd, X_XdX, adj.XdX) @ z
    z = tensor_maps(IX, adj.ev, X_XdX, XA) @ z
    out["ev_coev_on_X"] = _unit_right(X, XA, False) @ z

    # Xd -> Xd B -> Xd (X Xd) -> (Xd X) Xd -> A Xd -> Xd
    IXd = la.eye(Xd.m, X.F)
    XdB = relative_tensor(Xd, RB)
    Xd_XXd = relative_tensor(Xd, adj.XXd.Z)
    XdX_Xd = relative_tensor(adj.XdX.Z, Xd)
    AXd = relative_tensor(RA, Xd)
    z = _unit_right(Xd, XdB, True)
    z = tensor_maps(IXd, adj.coev, XdB, Xd_XXd) @ z
    z = _inverse_assoc(XdX_Xd, adj.XdX, Xd_XXd, adj.XXd) @ z
    z = tensor_maps(adj.ev, IXd, XdX_Xd, AXd) @ z
    out["ev_coev_on_Xd"] = _unit_left(Xd, AXd, False) @ z

    # X -> X A -> X (Xd X) -> (X Xd) X -> B X -> X
    z = _unit_right(X, XA, True)
    z = tensor_maps(IX, adj.coevt, XA, X_XdX) @ z
    z = _inverse_assoc(XXd_X, adj.XXd, X_XdX, adj.XdX) @ z
    z = tensor_maps(adj.evt, IX, XXd_X, BX) @ z
    out["evt_coevt_on_X"] = _unit_left(X, BX, False) @ z

    # Xd -> A Xd -> (Xd X) Xd -> Xd (X Xd) -> Xd B -> Xd
    z = _unit_left(Xd, AXd, True)
    z = tensor_maps(adj.coevt, IXd, AXd, XdX_Xd) @ z
    z = associator(XdX_Xd, adj.XdX, Xd_XXd, adj.XXd) @ z
    z = tensor_maps(IXd, adj.evt, Xd_XXd, XdB) @ z
    out["evt_coevt_on_Xd"] = _unit_right(Xd, XdB, False) @ z
    return out


def _inverse_assoc(left_nested, inner_left, right_nested, inner_right) -> np.ndarray:
    """Comparison ``X (Y Z) -> (X Y) Z``."""
    F = left_nested.Z.F
    up = _embed(right_nested, "right", inner_right)
    down = left_nested.split.pi @ la.kron(inner_left.split.pi, la.eye(left_nested.Y.m, F))
    return down @ up


def zorro_check(X: Bimodule, adj: Adjunction | None = None, euler: bool = True):
    """``(True, None)`` when all four snake composites are identities, else
    ``(False, name_of_first_failing_composite)``."""
    adj = adj or adjoint(X, euler=euler)
    for name, M in zorro_composites(adj).items():
        if not la.array_equal(M, la.eye(M.shape[0], X.F)):
            return False, name
    return True, None


def trace_and_qdim(X: Bimodule, chi: np.ndarray | None = None, euler: bool = True,
                   adj: Adjunction | None = None) -> dict:
    """Left/right traces of ``chi`` (default identity) as central elements.

    ``tr_l`` lives in ``End(1_A) = Z(A)`` (source algebra, ``B`` enclosed),
    ``tr_r`` in ``Z(B)`` (``A`` enclosed).  Scalars are reported when the
    element is a multiple of the unit.
    """
    adj = adj or adjoint(X, euler=euler)
    F = X.F
    chi = la.eye(X.m, F) if chi is None else chi
    IXd = la.eye(X.m, F)
    # tr_l = ev o (1 (x) chi) o coevt evaluated at 1_A
    mid = tensor_maps(IXd, chi, adj.XdX, adj.XdX)
    tl = (adj.ev @ mid @ adj.coevt) @ adj.A.unit
    mid = tensor_maps(chi, IXd, adj.XXd, adj.XXd)
    tr = (adj.evt @ mid @ adj.coev) @ adj.B.unit
    return {"tr_l": tl, "tr_r": tr, "dim_l": _as_scalar(tl, adj.A), "dim_r": _as_scalar(tr, adj.B)}


def _as_scalar(z, fs: FrobeniusStructure):
    k = next((i for i, v in enumerate(fs.unit) if v), None)
    c = z[k] / fs.unit[k]
    return c if la.array_equal(z, fs.unit * c) else None


def dual_map(f: BimoduleMap, side: str, euler: bool = True) -> np.ndarray:
    """``f^v: Y^v -> X^v`` for ``f: X -> Y`` using right (``ev``/``coev``) or left
    (``evt``/``coevt``) adjunction data, composed through the splittings."""
    X, Y = f.src, f.dst
    ax, ay = adjoint(X, euler=euler), adjoint(Y, euler=euler)
    F = X.F
    A, B = ax.A, ax.B
    RA = Bimodule(X.right, X.right, regular_bimodule(A).lact, regular_bimodule(A).ract, check=False)
    RB = Bimodule(X.left, X.left, regular_bimodule(B).lact, regular_bimodule(B).ract, check=False)
    IYd = la.eye(Y.m, F)
    IXd = la.eye(X.m, F)
    if side == "right":
        # Yd -> Yd B -> Yd (X Xd) -> Yd (Y Xd) -> (Yd Y) Xd -> A Xd -> Xd
        YdB = relative_tensor(ay.Xd, RB)
        Yd_XXd = relative_tensor(ay.Xd, ax.XXd.Z)
        YX = relative_tensor(Y, ax.Xd)
        Yd_YXd = relative_tensor(ay.Xd, YX.Z)
        YdY_Xd = relative_tensor(ay.XdX.Z, ax.Xd)
        AXd = relative_tensor(RA, ax.Xd)
        z = _unit_right(ay.Xd, YdB, True)
        z = tensor_maps(IYd, ax.coev, YdB, Yd_XXd) @ z
        z = tensor_maps(IYd, tensor_maps(f.matrix, IXd, ax.XXd, YX), Yd_XXd, Yd_YXd) @ z
        z = _inverse_assoc(YdY_Xd, ay.XdX, Yd_YXd, YX) @ z
        z = tensor_maps(ay.ev, IXd, YdY_Xd, AXd) @ z
        return _unit_left(ax.Xd, AXd, False) @ z
    # Yd -> A Yd -> (Xd X) Yd -> (Xd Y) Yd -> Xd (Y Yd) -> Xd B -> Xd
    AYd = relative_tensor(RA, ay.Xd)
    XdX_Yd = relative_tensor(ax.XdX.Z, ay.Xd)
    XdY = relative_tensor(ax.Xd, Y)
    XdY_Yd = relative_tensor(XdY.Z, ay.Xd)
    Xd_YYd = relative_tensor(ax.Xd, ay.XXd.Z)
    XdB = relative_tensor(ax.Xd, RB)
    z = _unit_left(ay.Xd, AYd, True)
    z = tensor_maps(ax.coevt, IYd, AYd, XdX_Yd) @ z
    z = tensor_maps(tensor_maps(IXd, f.matrix, ax.XdX, XdY), IYd, XdX_Yd, XdY_Yd) @ z
    z = associator(XdY_Yd, XdY, Xd_YYd, ay.XXd) @ z
    z = tensor_maps(IXd, ay.evt, Xd_YYd, XdB) @ z
    return _unit_right(ax.Xd, XdB, False) @ z


def check_pivotality(f: BimoduleMap, euler: bool = True) -> bool:
    return la.array_equal(dual_map(f, "right", euler), dual_map(f, "left", euler))


def double_dual_iso(X: Bimodule) -> BimoduleMap:
    """Canonical ``X -> X^vv`` (identity matrix in the double-dual basis)."""
    Xdd = _dual(_dual(X))
    return BimoduleMap(X, Xdd, la.eye(X.m, X.F))


# ---------------------------------------------------------------------------
# orbifold data over the base field

@dataclass
class OrbifoldSplitting:
    """``X`` splitting ``D``, the condensation composite and ``phi: D -> X^v X``."""
    X: Bimodule
    iso: BimoduleMap
    condensation: np.ndarray
    algebra_of_split: dict


def split_orbifold_datum(D: FrobeniusStructure) -> OrbifoldSplitting:
    """Split an orbifold datum ``D`` over the base field.

    ``X = D`` as a ``D``-field bimodule.  The condensation composite
    ``evt o coev`` on ``1_D`` must be the identity; the Frobenius algebra
    ``C = X^v (x)_D X`` is then matched with ``D`` by an isomorphism obtained
    from a linear system and verified on product, unit, counit and coproduct.
    """
    from .frobenius import scalar_algebra
    F = D.F
    base = scalar_algebra(1, F)
    X = Bimodule(D, base, [D.algebra.left_matrix(D.algebra.basis(i)) for i in range(D.n)],
                 [la.eye(D.n, F)], name=f"X_{D.name or 'D'}")
    cond = _condensation_composite(X, D)
    if not la.array_equal(cond, la.eye(D.n, F)):
        raise NotAnOrbifoldDatum(f"condensation composite evt o coev is not the identity: "
                                 f"{[[str(v) for v in r] for r in cond]}")
    if not D.is_delta_separable():
        raise NotAnOrbifoldDatum("orbifold datum must be Delta-separable")
    adj = adjoint(X, euler=False)
    alg = _condensation_algebra(adj)
    phi = _match_algebras(D, alg)
    Cmod = Bimodule(base, base, [la.eye(alg["dim"], F)], [la.eye(alg["dim"], F)], check=False)
    Dmod = Bimodule(base, base, [la.eye(D.n, F)], [la.eye(D.n, F)], check=False)
    return OrbifoldSplitting(X, BimoduleMap(Dmod, Cmod, phi), cond, alg)


def _condensation_composite(X: Bimodule, D: FrobeniusStructure) -> np.ndarray:
    """``evt o coev: D -> D`` using ``D``'s own Frobenius form (no Euler data).

    Over the base field the relative product ``X (x) X^v`` is the plain tensor
    product, so only ``D``'s pairing enters and non-separable inputs are fine.
    """
    F = X.F
    m = X.m
    cols = [X.left_op(D.algebra.basis(j)).reshape(-1) for j in range(D.n)]
    coev = np.stack(cols, axis=1)  # D -> X (x) X^v
    vals = la.zeros((D.n, m * m), F)
    for i in range(D.n):
        vals[i, :] = X.lact[i].T.reshape(-1)  # entry (x, f) = f(e_i . x)
    evt = _pairing_to_element(D, vals)
    return evt @ coev


def _condensation_algebra(adj: Adjunction) -> dict:
    """Frobenius structure on ``C = X^v (x)_D X`` from the pivotal data of ``X``.

    ``mu = 1 evt 1``, ``eta = coevt``, ``eps = ev``, ``Delta = 1 coev 1``; all
    maps are matrices in the split basis of ``C``.
    """
    X = adj.X
    F = X.F
    C = adj.XdX
    c = C.Z.m
    m = X.m
    D = adj.B
    iota, pi = C.split.iota, C.split.pi
    evt_plain = adj.evt @ adj.XXd.split.pi  # X (x) X^v -> D, balanced
    # T[x, g] = matrix of y -> evt(x (x) g) . y
    T = [[X.left_op(evt_plain[:, x * m + g]) for g in range(m)] for x in range(m)]
    mu = la.zeros((c, c * c), F)
    for s in range(c):
        u = iota[:, s].reshape(m, m)  # (f, x)
        for t in range(c):
            v = iota[:, t].reshape(m, m)  # (g, y)
            acc = la.zeros((m, m), F)
            for x in range(m):
                for g in range(m):
                    if la.is_zero(u[:, x]) or la.is_zero(v[g, :]):
                        continue
                    acc = acc + np.outer(u[:, x], T[x][g] @ v[g, :])
            mu[:, s * c + t] = pi @ acc.reshape(-1)
    unit = adj.coevt @ adj.A.unit
    counit = adj.ev.reshape(-1)  # base is one-dimensional
    K = (adj.XXd.split.iota @ (adj.coev @ D.unit)).reshape(m, m)  # coev(1) = sum K[x', g] x' (x) g
    delta = la.zeros((c * c, c), F)
    pipi = la.kron(pi, pi)
    for s in range(c):
        u = iota[:, s].reshape(m, m)
        # f (x) x  ->  sum K[x', g] (f (x) x') (x) (g (x) x)
        out = np.einsum("fx,ag->fagx", u, K).reshape(m * m * m * m)
        delta[:, s] = pipi @ out
    return {"dim": c, "mul": mu, "unit": unit, "counit": counit, "comul": delta, "pi": pi}


def _mul_c(alg: dict, u, v):
    return alg["mul"] @ np.outer(u, v).reshape(-1)


def _match_algebras(D: FrobeniusStructure, alg: dict) -> np.ndarray:
    """Frobenius isomorphism ``phi: D -> C`` (matrix ``C.dim x D.dim``).

    The candidate images ``kappa(e_i)`` transport ``e_i`` along the pairing
    ``D = D^* = X^v (x)_D X``; ``phi`` is then the unique solution of the linear
    system ``phi L_{e_i} = L^C_{kappa(e_i)} phi``, ``phi(1) = eta_C``, and is
    re-substituted into all four Frobenius structure maps.
    """
    F = D.F
    n = D.n
    c = alg["dim"]
    if c != n:
        raise NoIsomorphismFound(f"dimensions differ: {n} vs {c}")
    kappa = _canonical_images(D, alg)
    # unknown phi flattened row-major: phi[r, k] -> r * n + k
    rows, rhs = [], []
    for i in range(n):
        LD = D.algebra.left_matrix(D.algebra.basis(i))
        LC = la.zeros((c, c), F)
        for t in range(c):
            LC[:, t] = _mul_c(alg, kappa[:, i], la.eye(c, F)[:, t])
        # (phi LD - LC phi)[r, k] = sum_j phi[r, j] LD[j, k] - sum_j LC[r, j] phi[j, k]
        for r in range(c):
            for k in range(n):
                row = la.zeros(c * n, F)
                for j in range(n):
                    row[r * n + j] = row[r * n + j] + LD[j, k]
                for j in range(c):
                    row[j * n + k] = row[j * n + k] - LC[r, j]
                rows.append(row)
                rhs.append(F(0))
    for r in range(c):
        row = la.zeros(c * n, F)
        for k in range(n):
            row[r * n + k] = D.unit[k]
        rows.append(row)
        rhs.append(alg["unit"][r])
    A = np.stack(rows)
    b = la.as_field_array(rhs, F)
    sol = la.solve(A, b, F)
    if sol is None or la.rank(A) != c * n:
        raise NoIsomorphismFound("linear system for the algebra isomorphism has no unique solution")
    phi = sol.reshape(c, n)
    if not _is_frobenius_iso(D, alg, phi):
        raise NoIsomorphismFound("solution is not an isomorphism of Frobenius algebras")
    return phi


def _canonical_images(D: FrobeniusStructure, alg: dict) -> np.ndarray:
    """``kappa(a) = pi(eps_D(- a) (x) 1)``: transport along ``D = D^* = X^v (x)_D X``."""
    F = D.F
    n = D.n
    g = D.pairing  # g[y, a] = eps(e_y e_a)
    out = la.zeros((alg["dim"], n), F)
    pi = alg["pi"]
    for a in range(n):
        plain = np.einsum("y,x->yx", g[:, a], D.unit).reshape(-1)  # functional (x) element
        out[:, a] = pi @ plain
    return out


def _is_frobenius_iso(D: FrobeniusStructure, alg: dict, phi: np.ndarray) -> bool:
    F = D.F
    n = D.n
    if la.rank(phi) != n:
        return False
    E = la.eye(n, F)
    for i in range(n):
        for j in range(n):
            if not la.array_equal(phi @ D.algebra.multiply(E[:, i], E[:, j]),
                                  _mul_c(alg, phi[:, i], phi[:, j])):
                return False
    if not la.array_equal(phi @ D.unit, alg["unit"]):
        return False
    if not la.array_equal(alg["counit"] @ phi, D.counit):
        return False
    comul_D = D.comul.reshape(n, n * n).T  # column k = Delta(e_k) flattened
    return la.array_equal(alg["comul"] @ phi, la.kron(phi, phi) @ comul_D)
