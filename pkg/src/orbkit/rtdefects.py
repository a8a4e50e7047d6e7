"""Frobenius structures inside a braided fusion category.

The ambient braided data is general multiplicity-free fusion data with
R-symbols, checked by the two hexagon equations.  Algebra objects, actions and
bimodules are supported over pointed ambients with trivial associator, that is
``G``-graded vector spaces whose braiding ``c(x (x) y) = R(x, y) y (x) x`` is
given by a bicharacter.  In that setting an object is a graded vector space
(one label per basis vector, repetitions allowed) and every structure map is a
grading-preserving matrix, so all conditions become exact matrix identities.

Crossing conventions.  The tensor product algebra ``A (x) F`` multiplies
through ``c^{-1}_{A,F}`` and ``F (x) B`` through ``c^{-1}_{F,B}``; the
comultiplications use the inverse crossings.  The exchange conditions of
Frobenius algebras over a pair and of bimodules over a pair are written in
the matching conventions, so the regular examples satisfy them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg as la
from .errors import SchemaVersionMismatch, ShapeError
from .frobenius import Algebra, FrobeniusStructure, euler_gamma, matrix_algebra
from .fusioncat import FusionData
from .scalars import Field, parse_scalar

__all__ = ["BraidedFusionData", "pointed_braided", "vec_z2", "svec", "toric_code", "vec_zn",
           "AlgebraObject", "PairStructure", "BimoduleOverPair", "CheckResult", "PairReport",
           "check_commutative_frobenius", "check_frobenius_over_pair", "check_bimodule_over_pair",
           "graded_group_algebra", "pair_fixtures", "bimodule_fixtures", "BRAIDED", "regular_over_pair"]

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    ok: bool
    witness: str | None = None

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, "witness": self.witness}


# ---------------------------------------------------------------------------
# braided fusion data

class BraidedFusionData:
    """Fusion data with R-symbols ``R^{ab}_c`` (the braiding ``a (x) b -> b (x) a`` on the ``c`` channel)."""

    def __init__(self, fusion: FusionData, R: dict, name: str | None = None):
        self.fusion = fusion
        K = fusion.field
        self.R = {tuple(int(v) for v in k): K(v) for k, v in R.items()}
        self.name = name or fusion.name
        for (a, b, c) in self.R:
            if not fusion.fusion(a, b, c):
                raise ShapeError(f"R-symbol {(a, b, c)} on a non-admissible channel")
        for t in fusion.N:
            if not self.R.get(t):
                raise ShapeError(f"R-symbol missing or zero for channel {t}")

    def __repr__(self):
        return f"BraidedFusionData({self.name})"

    @property
    def field(self) -> Field:
        return self.fusion.field

    @property
    def n(self) -> int:
        return self.fusion.n

    def Rsym(self, a, b, c):
        return self.R.get((a, b, c), self.field(0))

    def hexagon_defect(self):
        """First failing hexagon as ``(which, (a, b, c, d, e, g))``, else ``None``.

        ``R^{ca}_e F^{acb}_{d;eg} R^{cb}_g = sum_f F^{cab}_{d;ef} R^{cf}_d F^{abc}_{d;fg}``
        and the same identity for the inverse braiding.
        """
        C = self.fusion
        K = self.field
        Rinv = {k: K(1) / v for k, v in self.R.items()}
        for which, Rm in (("hexagon", self.R), ("inverse hexagon", Rinv)):
            def r(x, y, z):
                return Rm.get((x, y, z), K(0))
            for a, b, c, d, e, g in product(range(self.n), repeat=6):
                if not (C.fusion(c, a, e) and C.fusion(e, b, d) and C.fusion(c, b, g) and C.fusion(a, g, d)):
                    continue
                lhs = r(c, a, e) * C.Fsym(a, c, b, d, e, g) * r(c, b, g)
                rhs = sum((C.Fsym(c, a, b, d, e, f) * r(c, f, d) * C.Fsym(a, b, c, d, f, g)
                           for f in range(self.n)), K(0))
                if lhs != rhs:
                    return which, (a, b, c, d, e, g)
        return None

    def check_hexagon(self) -> bool:
        return self.hexagon_defect() is None

    def twists(self) -> list:
        """``theta_a = (1/d_a) sum_c d_c R^{aa}_c``."""
        C = self.fusion
        K = self.field
        return [sum((C.qdim[c] * self.Rsym(a, a, c) for c in C.fuse(a, a)), K(0)) / C.qdim[a]
                for a in range(self.n)]

    # pointed layer --------------------------------------------------------
    def is_pointed_trivial(self) -> bool:
        C = self.fusion
        if any(d != 1 for d in C.qdim):
            return False
        if any(len(C.fuse(a, b)) != 1 for a in range(self.n) for b in range(self.n)):
            return False
        return all(v == 1 for v in C.F.values())

    def product(self, a, b) -> int:
        (c,) = self.fusion.fuse(a, b)
        return c

    def braid_scalar(self, a, b):
        return self.R[(a, b, self.product(a, b))]

    # serialisation --------------------------------------------------------
    def to_json(self) -> dict:
        out = self.fusion.to_json()
        out.update(kind="braided", name=self.name,
                   R=[list(k) + [str(v)] for k, v in sorted(self.R.items())])
        return out

    @classmethod
    def from_json(cls, data: dict) -> BraidedFusionData:
        _check_version(data, "braided")
        C = FusionData.from_json(data)
        d = C.field.d
        R = {tuple(e[:3]): parse_scalar(e[3], d) for e in data["R"]}
        return cls(C, R, name=data.get("name"))


def pointed_braided(orders, bichar, names=None, name=None, field: int = 1) -> BraidedFusionData:
    """``Vec_G`` for ``G = Z/orders[0] x ...`` with trivial associator and braiding ``bichar(x, y)``.

    Labels enumerate ``G`` in mixed radix (first factor slowest); ``bichar``
    receives the coordinate tuples.
    """
    K = Field(field)
    elems = list(product(*(range(o) for o in orders)))
    index = {g: i for i, g in enumerate(elems)}

    def add(x, y):
        return tuple((a + b) % o for a, b, o in zip(x, y, orders))

    def neg(x):
        return tuple((-a) % o for a, o in zip(x, orders))

    N = [(index[x], index[y], index[add(x, y)]) for x in elems for y in elems]
    labels = names or ["".join(map(str, g)) for g in elems]
    dual = [index[neg(x)] for x in elems]
    order = len(elems)
    pre = FusionData(labels, dual, N, {}, [1] * order, field, strict=False)
    F = {t: K(1) for t in pre.admissible_tuples()}
    C = FusionData(labels, dual, N, F, [1] * order, field, phi_sq=K(1) / order, name=name)
    R = {(index[x], index[y], index[add(x, y)]): K(bichar(x, y)) for x in elems for y in elems}
    return BraidedFusionData(C, R, name=name)


def vec_z2() -> BraidedFusionData:
    """``Vec_{Z/2}`` with the symmetric (trivial) braiding."""
    return pointed_braided((2,), lambda x, y: 1, names=["1", "g"], name="Vec_Z2")


def svec() -> BraidedFusionData:
    """``Vec_{Z/2}`` with ``R^{gg} = -1``: the odd line is a fermion (anticommuting braiding)."""
    return pointed_braided((2,), lambda x, y: (-1) ** (x[0] * y[0]), names=["1", "psi"], name="sVec")


def toric_code() -> BraidedFusionData:
    """``Z/2 x Z/2`` with ``R(x, y) = (-1)^{x_1 y_2}``; labels ``1, m, e, f``."""
    return pointed_braided((2, 2), lambda x, y: (-1) ** (x[0] * y[1]), names=["1", "m", "e", "f"],
                           name="toric_code")


def vec_zn(n: int) -> BraidedFusionData:
    """``Vec_{Z/n}`` with the symmetric braiding."""
    return pointed_braided((n,), lambda x, y: 1, name=f"Vec_Z{n}")


BRAIDED = {"vec_z2": vec_z2, "svec": svec, "toric_code": toric_code, "vec_z3": lambda: vec_zn(3)}


# ---------------------------------------------------------------------------
# graded linear maps

def _require_pointed(M: BraidedFusionData):
    if not M.is_pointed_trivial():
        raise ShapeError(f"{M!r}: algebra objects need a pointed ambient with trivial associator")


def _tensor_labels(M, X, Y):
    return [M.product(x, y) for x in X for y in Y]


def _braid(M, X, Y, inverse=False):
    """``c_{X,Y}: X (x) Y -> Y (x) X``, or ``c_{Y,X}^{-1}`` of the same shape when ``inverse``."""
    K = M.field
    nX, nY = len(X), len(Y)
    out = la.zeros((nY * nX, nX * nY), K)
    for i, j in product(range(nX), range(nY)):
        r = M.braid_scalar(X[i], Y[j]) if not inverse else K(1) / M.braid_scalar(Y[j], X[i])
        out[j * nX + i, i * nY + j] = r
    return out


def _graded_defect(M, src, dst, T):
    """First nonzero entry of ``T: src -> dst`` joining different labels."""
    for (r, c), v in np.ndenumerate(T):
        if v and dst[r] != src[c]:
            return (r, c)
    return None


def _eq(lhs, rhs, what):
    if la.array_equal(lhs, rhs):
        return None
    for idx, (a, b) in enumerate(zip(np.asarray(lhs).reshape(-1), np.asarray(rhs).reshape(-1))):
        if a != b:
            r, c = divmod(idx, lhs.shape[1])
            return f"{what}: component ({r}, {c}) is {a} versus {b}"
    return f"{what}: shape mismatch"


def _matrix_to_json(M) -> dict:
    return {"shape": list(M.shape), "entries": [[r, c, str(v)] for (r, c), v in np.ndenumerate(M) if v]}


def _matrix_from_json(data: dict, K: Field) -> np.ndarray:
    M = la.zeros(tuple(data["shape"]), K)
    for r, c, v in data["entries"]:
        M[r, c] = parse_scalar(v, K.d)
    return M


def _check_version(data: dict, kind: str):
    ver = data.get("schema_version", SCHEMA_VERSION)
    if ver != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"{kind} schema {ver}, expected {SCHEMA_VERSION}")


def _first(*defects):
    for d in defects:
        if d is not None:
            return d
    return None


# ---------------------------------------------------------------------------
# algebra objects

class AlgebraObject:
    """A Frobenius algebra in a pointed braided ambient: a graded Frobenius structure."""

    def __init__(self, ambient: BraidedFusionData, fs: FrobeniusStructure, labels, name=None):
        _require_pointed(ambient)
        self.ambient = ambient
        self.fs = fs
        self.labels = [int(x) for x in labels]
        self.name = name or fs.name
        if len(self.labels) != fs.n:
            raise ShapeError("one label per basis vector is required")
        if fs.F != ambient.field:
            raise ShapeError("algebra and ambient live over different fields")

    def __repr__(self):
        return f"AlgebraObject({self.name}, labels={self.labels})"

    @property
    def F(self) -> Field:
        return self.fs.F

    @property
    def n(self) -> int:
        return self.fs.n

    @property
    def mu(self) -> np.ndarray:
        """``(n, n*n)`` matrix of the multiplication."""
        return self.fs.algebra.mul.reshape(self.n * self.n, self.n).T

    @property
    def delta(self) -> np.ndarray:
        """``(n*n, n)`` matrix of the comultiplication."""
        return self.fs.comul.reshape(self.n, self.n * self.n).T

    @property
    def eta(self) -> np.ndarray:
        return self.fs.unit.reshape(self.n, 1)

    @property
    def eps(self) -> np.ndarray:
        return self.fs.counit.reshape(1, self.n)

    def eye(self) -> np.ndarray:
        return la.eye(self.n, self.F)

    def grading_defect(self):
        M = self.ambient
        L = self.labels
        LL = _tensor_labels(M, L, L)
        bad = _graded_defect(M, LL, L, self.mu)
        if bad is not None:
            return f"multiplication leaves the grading at {bad}"
        if _graded_defect(M, L, LL, self.delta) is not None:
            return "comultiplication leaves the grading"
        if _graded_defect(M, [0], L, self.eta) is not None:
            return "unit is not of trivial degree"
        if _graded_defect(M, L, [0], self.eps) is not None:
            return "counit is not of trivial degree"
        return None

    def frobenius_defect(self):
        """Grading, Delta-separability and the Frobenius relation."""
        I = self.eye()
        return _first(
            self.grading_defect(),
            _eq(la.matmul(self.mu, self.delta), I, "Delta-separability"),
            _eq(la.matmul(la.kron(self.mu, I), la.kron(I, self.delta)), la.matmul(self.delta, self.mu),
                "Frobenius relation (left)"),
            _eq(la.matmul(la.kron(I, self.mu), la.kron(self.delta, I)), la.matmul(self.delta, self.mu),
                "Frobenius relation (right)"),
        )

    def to_json(self, ambient_ref=None) -> dict:
        return {"kind": "algebra_object", "schema_version": SCHEMA_VERSION, "name": self.name,
                "ambient": ambient_ref if ambient_ref is not None else self.ambient.to_json(),
                "algebra": self.fs.to_json(), "labels": list(self.labels)}

    @classmethod
    def from_json(cls, data: dict, resolve=None) -> AlgebraObject:
        """``resolve(ref)`` turns the ambient reference into braided data (inline by default)."""
        _check_version(data, "algebra_object")
        resolve = resolve or BraidedFusionData.from_json
        amb = data["ambient"] if isinstance(data["ambient"], BraidedFusionData) else resolve(data["ambient"])
        return cls(amb, FrobeniusStructure.from_json(data["algebra"]), data["labels"], name=data.get("name"))

    def transformed(self, P) -> AlgebraObject:
        """The same object in the basis ``e'_i = sum_k P[k, i] e_k`` (``P`` grading-preserving)."""
        P = la.as_field_array(P, self.F)
        if _graded_defect(self.ambient, self.labels, self.labels, P) is not None:
            raise ShapeError("basis change must preserve the grading")
        Pi = la.inverse(P, self.F)
        mu = la.matmul(Pi, self.mu, la.kron(P, P))
        n = self.n
        mul = mu.T.reshape(n, n, n)
        alg = Algebra(mul, (la.matmul(Pi, self.eta)).reshape(-1), self.F)
        fs = FrobeniusStructure(alg, (la.matmul(self.eps, P)).reshape(-1), name=self.fs.name)
        return AlgebraObject(self.ambient, fs, self.labels, name=self.name)


def graded_group_algebra(ambient: BraidedFusionData, subgroup, name=None) -> AlgebraObject:
    """Delta-separable group algebra of the labels ``subgroup`` (closed under the product)."""
    _require_pointed(ambient)
    K = ambient.field
    S = [int(x) for x in subgroup]
    pos = {g: i for i, g in enumerate(S)}
    n = len(S)
    mul = la.zeros((n, n, n), K)
    for i, j in product(range(n), repeat=2):
        c = ambient.product(S[i], S[j])
        if c not in pos:
            raise ShapeError(f"labels {S} are not closed under the product")
        mul[i, j, pos[c]] = K(1)
    unit = [K(1) if g == 0 else K(0) for g in S]
    counit = [K(1) if g == 0 else K(0) for g in S]
    fs = euler_gamma(FrobeniusStructure(Algebra(mul, unit, K), counit))
    return AlgebraObject(ambient, fs, S, name=name or f"A{S}")


def check_commutative_frobenius(A: AlgebraObject) -> CheckResult:
    """Commutativity through the braiding, Delta-separability and the Frobenius relation."""
    bad = _first(_eq(la.matmul(A.mu, _braid(A.ambient, A.labels, A.labels)), A.mu, "commutativity mu c = mu"),
                 A.frobenius_defect())
    return CheckResult(bad is None, bad)


# ---------------------------------------------------------------------------
# Frobenius algebras over a pair

def _tensor_algebra(M, X: AlgebraObject, Y: AlgebraObject):
    """``(mu, delta, eta)`` of ``X (x) Y``, multiplying through ``c^{-1}_{X,Y}``."""
    IX, IY = X.eye(), Y.eye()
    sigma = _braid(M, Y.labels, X.labels, inverse=True)  # Y (x) X -> X (x) Y
    tau = _braid(M, X.labels, Y.labels)  # X (x) Y -> Y (x) X
    mu = la.matmul(la.kron(X.mu, Y.mu), la.kron(la.kron(IX, sigma), IY))
    delta = la.matmul(la.kron(la.kron(IX, tau), IY), la.kron(X.delta, Y.delta))
    return mu, delta, la.kron(X.eta, Y.eta)


@dataclass
class PairStructure:
    """``F`` with a left ``A``-action ``L: A (x) F -> F`` and a right ``B``-action ``R: F (x) B -> F``."""
    F: AlgebraObject
    A: AlgebraObject
    B: AlgebraObject
    L: np.ndarray
    R: np.ndarray
    name: str = ""

    @classmethod
    def from_maps(cls, F, A, B, iota_A, iota_B, name=""):
        """Actions by multiplication along grading-preserving maps ``A -> F`` and ``B -> F``."""
        K = F.F
        iA = la.as_field_array(iota_A, K)
        iB = la.as_field_array(iota_B, K)
        L = la.matmul(F.mu, la.kron(iA, F.eye()))
        R = la.matmul(F.mu, la.kron(F.eye(), iB))
        return cls(F, A, B, L, R, name)

    @property
    def ambient(self):
        return self.F.ambient

    def to_json(self) -> dict:
        amb = self.ambient.to_json()
        return {"kind": "pair", "schema_version": SCHEMA_VERSION, "name": self.name, "ambient": amb,
                "F": self.F.to_json(amb), "A": self.A.to_json(amb), "B": self.B.to_json(amb),
                "left": _matrix_to_json(self.L), "right": _matrix_to_json(self.R)}

    @classmethod
    def from_json(cls, data: dict, resolve=None) -> PairStructure:
        _check_version(data, "pair")
        resolve = resolve or BraidedFusionData.from_json
        amb = resolve(data["ambient"])
        F, A, B = (AlgebraObject.from_json(dict(data[k], ambient=amb)) for k in ("F", "A", "B"))
        K = amb.field
        return cls(F, A, B, _matrix_from_json(data["left"], K), _matrix_from_json(data["right"], K),
                   data.get("name", ""))

    def with_left(self, L, name=None) -> PairStructure:
        return PairStructure(self.F, self.A, self.B, la.as_field_array(L, self.F.F), self.R, name or self.name)

    def with_right(self, R, name=None) -> PairStructure:
        return PairStructure(self.F, self.A, self.B, self.L, la.as_field_array(R, self.F.F), name or self.name)

    def transformed(self, PF, PA, PB) -> PairStructure:
        """Simultaneous grading-preserving basis change of ``F``, ``A`` and ``B``."""
        K = self.F.F
        PF, PA, PB = (la.as_field_array(P, K) for P in (PF, PA, PB))
        PFi = la.inverse(PF, K)
        return PairStructure(self.F.transformed(PF), self.A.transformed(PA), self.B.transformed(PB),
                             la.matmul(PFi, self.L, la.kron(PA, PF)), la.matmul(PFi, self.R, la.kron(PF, PB)),
                             self.name)

    def bimodule_defect(self):
        """Grading, module axioms and commuting actions."""
        M = self.ambient
        F, A, B = self.F, self.A, self.B
        IF, IA, IB = F.eye(), A.eye(), B.eye()
        L, R = self.L, self.R
        return _first(
            _graded_defect(M, _tensor_labels(M, A.labels, F.labels), F.labels, L) and "left action leaves the grading",
            _graded_defect(M, _tensor_labels(M, F.labels, B.labels), F.labels, R) and "right action leaves the grading",
            _eq(la.matmul(L, la.kron(A.mu, IF)), la.matmul(L, la.kron(IA, L)), "left action is associative"),
            _eq(la.matmul(L, la.kron(A.eta, IF)), IF, "left unit acts trivially"),
            _eq(la.matmul(R, la.kron(IF, B.mu)), la.matmul(R, la.kron(R, IB)), "right action is associative"),
            _eq(la.matmul(R, la.kron(IF, B.eta)), IF, "right unit acts trivially"),
            _eq(la.matmul(L, la.kron(IA, R)), la.matmul(R, la.kron(L, IB)), "actions commute"),
        )


@dataclass
class PairReport:
    via_frobenius_maps: bool
    via_kmrs_diagrams: bool
    agree: bool
    witness_maps: str | None = None
    witness_kmrs: str | None = None

    def as_dict(self) -> dict:
        return {"via_frobenius_maps": self.via_frobenius_maps, "via_kmrs_diagrams": self.via_kmrs_diagrams,
                "agree": self.agree, "witness_maps": self.witness_maps, "witness_kmrs": self.witness_kmrs}


def _via_frobenius_maps(P: PairStructure):
    """Both action maps are unital algebra and coalgebra maps out of the tensor algebras."""
    M = P.ambient
    F, A, B = P.F, P.A, P.B
    mu_AF, delta_AF, eta_AF = _tensor_algebra(M, A, F)
    mu_FB, delta_FB, eta_FB = _tensor_algebra(M, F, B)
    L, R = P.L, P.R
    return _first(
        _eq(la.matmul(L, mu_AF), la.matmul(F.mu, la.kron(L, L)), "left action is multiplicative"),
        _eq(la.matmul(L, eta_AF), F.eta, "left action is unital"),
        _eq(la.matmul(F.delta, L), la.matmul(la.kron(L, L), delta_AF), "left action is comultiplicative"),
        _eq(la.matmul(R, mu_FB), la.matmul(F.mu, la.kron(R, R)), "right action is multiplicative"),
        _eq(la.matmul(R, eta_FB), F.eta, "right action is unital"),
        _eq(la.matmul(F.delta, R), la.matmul(la.kron(R, R), delta_FB), "right action is comultiplicative"),
    )


def _via_exchange_diagrams(P: PairStructure):
    """The four families of three-term exchange relations."""
    M = P.ambient
    F, A, B = P.F, P.A, P.B
    IF, IA, IB = F.eye(), A.eye(), B.eye()
    L, R = P.L, P.R
    c_AF = _braid(M, A.labels, F.labels)
    c_FB = _braid(M, F.labels, B.labels)
    out = []
    # left action against the multiplication, on A F F
    t1 = la.matmul(F.mu, la.kron(L, IF))
    t2 = la.matmul(L, la.kron(IA, F.mu))
    t3 = la.matmul(F.mu, la.kron(IF, L), la.kron(c_AF, IF))
    out += [_eq(t1, t2, "(a.f) f' = a.(f f')"), _eq(t2, t3, "a.(f f') = f (a.f') through the braiding")]
    # right action against the multiplication, on F F B
    t1 = la.matmul(F.mu, la.kron(IF, R))
    t2 = la.matmul(R, la.kron(F.mu, IB))
    t3 = la.matmul(F.mu, la.kron(R, IF), la.kron(IF, c_FB))
    out += [_eq(t1, t2, "f (f'.b) = (f f').b"), _eq(t2, t3, "(f f').b = (f.b) f' through the braiding")]
    # left action against the comultiplication, A F -> F F
    t1 = la.matmul(F.delta, L)
    t2 = la.matmul(la.kron(L, IF), la.kron(IA, F.delta))
    t3 = la.matmul(la.kron(IF, L), la.kron(c_AF, IF), la.kron(IA, F.delta))
    out += [_eq(t1, t2, "Delta(a.f) = (a. x id) Delta f"), _eq(t2, t3, "Delta(a.f) = (id x a.) Delta f")]
    # right action against the comultiplication, F B -> F F
    t1 = la.matmul(F.delta, R)
    t2 = la.matmul(la.kron(IF, R), la.kron(F.delta, IB))
    t3 = la.matmul(la.kron(R, IF), la.kron(IF, c_FB), la.kron(F.delta, IB))
    out += [_eq(t1, t2, "Delta(f.b) = (id x .b) Delta f"), _eq(t2, t3, "Delta(f.b) = (.b x id) Delta f")]
    return _first(*out)


def check_frobenius_over_pair(P: PairStructure) -> PairReport:
    """Evaluate both characterizations independently and compare their verdicts."""
    pre = _first(P.F.frobenius_defect(), P.bimodule_defect())
    w1 = pre or _via_frobenius_maps(P)
    w2 = pre or _via_exchange_diagrams(P)
    return PairReport(w1 is None, w2 is None, (w1 is None) == (w2 is None), w1, w2)


# ---------------------------------------------------------------------------
# bimodules over a pair

@dataclass
class BimoduleOverPair:
    """A ``G``-``F``-bimodule ``M`` with ``F, G`` over the same pair ``(A, B)``."""
    labels: list
    G: PairStructure
    F: PairStructure
    left: np.ndarray  # G (x) M -> M
    right: np.ndarray  # M (x) F -> M
    name: str = ""
    braid_override: dict = field(default_factory=dict)

    def eye(self):
        return la.eye(len(self.labels), self.G.F.F)

    def to_json(self) -> dict:
        out = {"kind": "pair_bimodule", "schema_version": SCHEMA_VERSION, "name": self.name,
               "labels": list(self.labels), "G": self.G.to_json(), "F": self.F.to_json(),
               "left": _matrix_to_json(self.left), "right": _matrix_to_json(self.right)}
        if self.braid_override:
            out["braid_override"] = {k: _matrix_to_json(v) for k, v in sorted(self.braid_override.items())}
        return out

    @classmethod
    def from_json(cls, data: dict, resolve=None) -> BimoduleOverPair:
        _check_version(data, "pair_bimodule")
        G = PairStructure.from_json(data["G"], resolve)
        F = PairStructure.from_json(data["F"], resolve)
        K = G.ambient.field
        over = {k: _matrix_from_json(v, K) for k, v in data.get("braid_override", {}).items()}
        return cls(list(data["labels"]), G, F, _matrix_from_json(data["left"], K),
                   _matrix_from_json(data["right"], K), data.get("name", ""), over)


def _bimodule_defect(X: BimoduleOverPair):
    M = X.G.ambient
    G, F = X.G.F, X.F.F
    I, IG, IF = X.eye(), G.eye(), F.eye()
    lab = X.labels
    return _first(
        _graded_defect(M, _tensor_labels(M, G.labels, lab), lab, X.left) and "left action leaves the grading",
        _graded_defect(M, _tensor_labels(M, lab, F.labels), lab, X.right) and "right action leaves the grading",
        _eq(la.matmul(X.left, la.kron(G.mu, I)), la.matmul(X.left, la.kron(IG, X.left)), "left action is associative"),
        _eq(la.matmul(X.left, la.kron(G.eta, I)), I, "left unit acts trivially"),
        _eq(la.matmul(X.right, la.kron(I, F.mu)), la.matmul(X.right, la.kron(X.right, IF)),
            "right action is associative"),
        _eq(la.matmul(X.right, la.kron(I, F.eta)), I, "right unit acts trivially"),
        _eq(la.matmul(X.left, la.kron(IG, X.right)), la.matmul(X.right, la.kron(X.left, IF)), "actions commute"),
    )


def check_bimodule_over_pair(X: BimoduleOverPair) -> CheckResult:
    """The two exchange conditions relating the ``B``- and ``A``-actions through ``F`` and ``G``.

    ``X.braid_override`` may replace the crossing in either condition (keys
    ``"B"`` and ``"A"``); it exists to probe the conditions with wrong braidings.
    """
    if X.G.A is not X.F.A and not la.array_equal(X.G.A.mu, X.F.A.mu):
        return CheckResult(False, "F and G are not over the same A")
    if X.G.B is not X.F.B and not la.array_equal(X.G.B.mu, X.F.B.mu):
        return CheckResult(False, "F and G are not over the same B")
    pre = _bimodule_defect(X)
    if pre is not None:
        return CheckResult(False, pre)
    amb = X.G.ambient
    G, F = X.G, X.F
    A, B = F.A, F.B
    I, IG = X.eye(), G.F.eye()
    lab = X.labels
    IA, IB = A.eye(), B.eye()
    # M B -> M: m.(1_F . b) against (1_G . b) . m after moving b past m
    c_MB = X.braid_override.get("B", _braid(amb, lab, B.labels))
    lhs = la.matmul(X.right, la.kron(I, F.R), la.kron(la.kron(I, F.F.eta), IB))
    rhs = la.matmul(X.left, la.kron(G.R, I), la.kron(IG, c_MB), la.kron(G.F.eta, la.kron(I, IB)))
    bad = _eq(lhs, rhs, "B-exchange condition")
    if bad is None:
        # M A -> M: m.(a . 1_F) against (a . 1_G) . m after moving a in front of 1_G m
        cinv = X.braid_override.get("A", _braid(amb, lab, A.labels, inverse=True))
        lhs = la.matmul(X.right, la.kron(I, F.L), la.kron(la.kron(I, IA), F.F.eta))
        rhs = la.matmul(X.left, la.kron(G.L, I), la.kron(IA, la.kron(G.F.eta, I)), cinv)
        bad = _eq(lhs, rhs, "A-exchange condition")
    return CheckResult(bad is None, bad)


def regular_over_pair(P: PairStructure, name="") -> BimoduleOverPair:
    """``F`` as an ``F``-``F``-bimodule."""
    return BimoduleOverPair(list(P.F.labels), P, P, P.F.mu, P.F.mu, name=name or f"{P.name} regular")


# ---------------------------------------------------------------------------
# generated fixtures

def _inclusion(F: AlgebraObject, A: AlgebraObject, images):
    """Matrix ``A -> F`` sending basis vector ``i`` of ``A`` to basis vector ``images[i]`` of ``F``."""
    M = la.zeros((F.n, A.n), F.F)
    for i, j in enumerate(images):
        M[j, i] = F.F(1)
    return M


def _unit_algebra(amb):
    return graded_group_algebra(amb, [0], name="1")


def pair_fixtures() -> list:
    """``(PairStructure, expected verdict)`` pairs, including mutated negatives."""
    out = []
    K = Field(1)

    vec = pointed_braided((), lambda x, y: 1, names=["1"], name="Vec")
    one = _unit_algebra(vec)
    # Q[Z/2] in Vec: both basis vectors have the trivial degree
    z2 = euler_gamma(FrobeniusStructure(
        Algebra(np.array([[[K(1), K(0)], [K(0), K(1)]], [[K(0), K(1)], [K(1), K(0)]]], dtype=object),
                [K(1), K(0)], K), [K(1), K(0)]))
    Fv = AlgebraObject(vec, z2, [0, 0], name="Gamma(Q[Z/2])")
    out.append((PairStructure.from_maps(Fv, one, one, Fv.eta, Fv.eta, "Vec: Gamma(Q[Z2]) over (1, 1)"), True))

    v2 = vec_z2()
    A2 = graded_group_algebra(v2, [0, 1], name="1+g")
    one2 = _unit_algebra(v2)
    reg = PairStructure.from_maps(A2, A2, A2, A2.eye(), A2.eye(), "Vec_Z2: A regular over (A, A)")
    out.append((reg, True))
    out.append((PairStructure.from_maps(A2, one2, A2, A2.eta, A2.eye(), "Vec_Z2: A over (1, A)"), True))
    bad_R = reg.R.copy()
    bad_R[0, 3] = bad_R[0, 3] * 2  # the component g (x) g -> 1
    out.append((reg.with_right(bad_R, "Vec_Z2: corrupted right action"), False))

    # Mat_2 graded by Z/2 (diagonal even, off-diagonal odd); A = 1+g acting through sigma_x
    m2 = euler_gamma(matrix_algebra(2))
    Fm = AlgebraObject(v2, m2, [0, 1, 1, 0], name="Gamma(Mat_2)")
    out.append((PairStructure.from_maps(Fm, one2, one2, Fm.eta, Fm.eta, "Vec_Z2: Mat_2 over (1, 1)"), True))
    sx = la.zeros((4, 2), K)
    sx[0, 0] = sx[3, 0] = K(1)
    sx[1, 1] = sx[2, 1] = K(1)
    out.append((PairStructure.from_maps(Fm, A2, one2, sx, Fm.eta, "Vec_Z2: Mat_2 over (1+g via sigma_x, 1)"), False))

    sv = svec()
    Fs = graded_group_algebra(sv, [0, 1], name="1+psi")
    ones = _unit_algebra(sv)
    out.append((PairStructure.from_maps(Fs, ones, ones, Fs.eta, Fs.eta, "sVec: 1+psi over (1, 1)"), True))

    tc = toric_code()
    Ft = graded_group_algebra(tc, [0, 1, 2, 3], name="Z2xZ2")
    onet = _unit_algebra(tc)
    Am = graded_group_algebra(tc, [0, 1], name="1+m")
    Ae = graded_group_algebra(tc, [0, 2], name="1+e")
    im_m = _inclusion(Ft, Am, [0, 1])
    im_e = _inclusion(Ft, Ae, [0, 2])
    good = PairStructure.from_maps(Ft, Am, Ae, im_m, im_e, "toric: Z2xZ2 over (1+m, 1+e)")
    out.append((good, True))
    out.append((PairStructure.from_maps(Ft, Ae, Ae, im_e, im_e, "toric: Z2xZ2 over (1+e, 1+e)"), False))
    out.append((PairStructure.from_maps(Ft, Am, Am, im_m, im_m, "toric: Z2xZ2 over (1+m, 1+m)"), False))
    out.append((PairStructure.from_maps(Ft, onet, onet, Ft.eta, Ft.eta, "toric: Z2xZ2 over (1, 1)"), True))
    bad_L = good.L.copy()
    bad_L[1, 1 * 4 + 0] = bad_L[1, 1 * 4 + 0] * 3
    out.append((good.with_left(bad_L, "toric: corrupted left action"), False))

    v3 = vec_zn(3)
    A3 = graded_group_algebra(v3, [0, 1, 2], name="Q[Z3]")
    out.append((PairStructure.from_maps(A3, A3, A3, A3.eye(), A3.eye(), "Vec_Z3: A regular over (A, A)"), True))
    return out


def bimodule_fixtures() -> list:
    """``(BimoduleOverPair, expected verdict)`` pairs, including a wrong-braiding mutation."""
    out = []
    pairs = {P.name: P for P, ok in pair_fixtures() if ok}
    for key in ("Vec_Z2: A regular over (A, A)", "toric: Z2xZ2 over (1+m, 1+e)", "Vec_Z3: A regular over (A, A)",
                "sVec: 1+psi over (1, 1)"):
        out.append((regular_over_pair(pairs[key]), True))
    P = pairs["toric: Z2xZ2 over (1+m, 1+e)"]
    X = regular_over_pair(P)
    amb = P.ambient
    wrong = _braid(amb, X.labels, P.B.labels, inverse=True)  # c^{-1}_{B,M} in place of c_{M,B}
    out.append((BimoduleOverPair(X.labels, P, P, X.left, X.right, name="toric regular, inverse braiding",
                                 braid_override={"B": wrong}), False))
    return out
