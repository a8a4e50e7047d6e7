"""Multiplicity-free spherical fusion data, Calabi-Yau categories and module traces.

F-symbols follow ``F^{abc}_{d; e f}``: the change of basis
``((a b)_e c)_d -> (a (b c)_f)_d``.  Labels are integers ``0..n-1`` with ``0``
the unit.  Semisimple Calabi-Yau categories are modelled on simples: an object
is a tuple of simple labels, a morphism ``a -> b`` is a ``len(b) x len(a)``
matrix vanishing between different labels, and a linear functor is fixed by
the tuple it assigns to each simple.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from . import linalg as la
from .errors import DegenerateTracePairing, NotAnEquivalence, ShapeError
from .scalars import Field, parse_scalar

__all__ = ["FusionData", "FusionReport", "check_fusion", "pointed_fusion", "fibonacci",
           "CYCategoryData", "SimpleFunctor", "left_adjoint_from_trace", "check_zorro_right",
           "check_zorro_left", "check_pivotal_equivalence", "identity_adjunction", "check_rigidity_strong",
           "ModuleCategoryData", "check_module_pentagon", "check_module_trace", "regular_module"]


class FusionData:
    """Multiplicity-free fusion data with scalar F-symbols and quantum dimensions."""

    def __init__(self, labels, dual, N, F, qdim, field: int = 1, phi=None, phi_sq=None,
                 name: str | None = None, strict: bool = True):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.field = Field(field)
        self.dual = [int(x) for x in dual]
        self.N = frozenset(tuple(int(v) for v in t) for t in N)
        K = self.field
        self.F = {tuple(int(v) for v in k): K(v) for k, v in F.items()}
        self.qdim = [K(v) for v in qdim]
        self.phi = None if phi is None else K(phi)
        if phi_sq is None and self.phi is not None:
            phi_sq = self.phi * self.phi
        self.phi_sq = None if phi_sq is None else K(phi_sq)
        self.name = name
        if len(self.dual) != self.n or len(self.qdim) != self.n:
            raise ShapeError("dual and qdim need one entry per label")
        for t in self.N:
            if len(t) != 3 or not all(0 <= v < self.n for v in t):
                raise ShapeError(f"fusion triple {t} out of range")
        for k in self.F:
            if len(k) != 6 or not all(0 <= v < self.n for v in k):
                raise ShapeError(f"F-symbol index {k} out of range")
        if strict:
            missing = [k for k in self.admissible_tuples() if k not in self.F]
            if missing:
                raise ShapeError(f"F-symbol missing for admissible tuple {missing[0]}")

    def __repr__(self):
        return f"FusionData({self.name or self.labels})"

    def fusion(self, a, b, c) -> bool:
        return (a, b, c) in self.N

    def fuse(self, a, b) -> list:
        return [c for c in range(self.n) if (a, b, c) in self.N]

    def admissible(self, a, b, c, d, e, f) -> bool:
        return ((a, b, e) in self.N and (e, c, d) in self.N
                and (b, c, f) in self.N and (a, f, d) in self.N)

    def admissible_tuples(self):
        return [t for t in product(range(self.n), repeat=6) if self.admissible(*t)]

    def Fsym(self, a, b, c, d, e, f):
        if not self.admissible(a, b, c, d, e, f):
            return self.field(0)
        return self.F.get((a, b, c, d, e, f), self.field(0))

    def Fmatrix(self, a, b, c, d):
        """``(es, fs, M)`` with ``M[i, j] = F^{abc}_{d; es[i] fs[j]}``."""
        es = [e for e in self.fuse(a, b) if (e, c, d) in self.N]
        fs = [f for f in self.fuse(b, c) if (a, f, d) in self.N]
        M = la.zeros((len(es), len(fs)), self.field)
        for i, e in enumerate(es):
            for j, f in enumerate(fs):
                M[i, j] = self.Fsym(a, b, c, d, e, f)
        return es, fs, M

    @cached_property
    def _Finv(self) -> dict:
        out = {}
        for a, b, c, d in product(range(self.n), repeat=4):
            es, fs, M = self.Fmatrix(a, b, c, d)
            if not es and not fs:
                continue
            if len(es) != len(fs):
                raise ShapeError(f"F-matrix for {(a, b, c, d)} is not square")
            Minv = la.inverse(M, self.field)
            for j, f in enumerate(fs):
                for i, e in enumerate(es):
                    if Minv[j, i]:
                        out[(a, b, c, d, f, e)] = Minv[j, i]
        return out

    def Finv(self, a, b, c, d, f, e):
        """Entry ``(f, e)`` of the inverse F-matrix: ``(a (b c)_f)_d -> ((a b)_e c)_d``."""
        return self._Finv.get((a, b, c, d, f, e), self.field(0))

    @property
    def globaldim(self):
        return sum((d * d for d in self.qdim), self.field(0))

    @property
    def euler_phi_sq(self):
        return self.phi_sq

    # serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        return {"kind": "fusion", "schema_version": 1, "name": self.name, "labels": self.labels,
                "dual": self.dual, "N": sorted([list(t) for t in self.N]),
                "F": [list(k) + [str(v)] for k, v in sorted(self.F.items())],
                "qdim": [str(v) for v in self.qdim], "field": self.field.d,
                "phi": None if self.phi is None else str(self.phi),
                "phi_sq": None if self.phi_sq is None else str(self.phi_sq)}

    @classmethod
    def from_json(cls, data: dict, strict: bool = True) -> FusionData:
        d = int(data.get("field", 1))
        F = {tuple(e[:6]): parse_scalar(e[6], d) for e in data["F"]}
        phi = data.get("phi")
        phi_sq = data.get("phi_sq")
        return cls(data["labels"], data["dual"], data["N"], F, [parse_scalar(v, d) for v in data["qdim"]],
                   field=d, phi=None if phi is None else parse_scalar(phi, d),
                   phi_sq=None if phi_sq is None else parse_scalar(phi_sq, d),
                   name=data.get("name"), strict=strict)

    def with_F(self, key, value) -> FusionData:
        """Copy with one F-symbol replaced (used for mutation tests)."""
        F = dict(self.F)
        F[tuple(key)] = self.field(value)
        return FusionData(self.labels, self.dual, self.N, F, self.qdim, self.field.d, self.phi,
                          self.phi_sq, name=f"{self.name}*", strict=False)


@dataclass
class FusionReport:
    pentagon: bool
    unit: bool
    spherical: bool
    globaldim: object
    pentagon_witness: tuple | None = None
    unit_witness: tuple | None = None
    spherical_witness: object = None

    @property
    def ok(self) -> bool:
        return self.pentagon and self.unit and self.spherical

    def as_dict(self) -> dict:
        return {"pentagon": self.pentagon, "unit": self.unit, "spherical": self.spherical,
                "globaldim": str(self.globaldim), "pentagon_witness": self.pentagon_witness,
                "unit_witness": self.unit_witness,
                "spherical_witness": None if self.spherical_witness is None else str(self.spherical_witness)}


def pentagon_defect(C: FusionData):
    """First ``(a, b, c, d, e, f, g, k, l)`` violating the pentagon, or None.

    ``F^{fcd}_{e;gl} F^{abl}_{e;fk} = sum_h F^{abc}_{g;fh} F^{ahd}_{e;gk} F^{bcd}_{k;hl}``.
    """
    n = C.n
    R = range(n)
    for a, b, c, d in product(R, repeat=4):
        for f in C.fuse(a, b):
            for g in C.fuse(f, c):
                for e in C.fuse(g, d):
                    for l in C.fuse(c, d):
                        for k in R:
                            lhs = C.Fsym(f, c, d, e, g, l) * C.Fsym(a, b, l, e, f, k)
                            rhs = C.field(0)
                            for h in C.fuse(b, c):
                                t = C.Fsym(a, b, c, g, f, h)
                                if t:
                                    rhs = rhs + t * C.Fsym(a, h, d, e, g, k) * C.Fsym(b, c, d, k, h, l)
                            if lhs != rhs:
                                return (a, b, c, d, e, f, g, k, l)
    return None


def unit_defect(C: FusionData):
    for a in range(C.n):
        if C.fuse(0, a) != [a] or C.fuse(a, 0) != [a]:
            return ("fusion with unit", a)
    for a, b, c, d, e, f in C.admissible_tuples():
        if (a == 0 or b == 0 or c == 0) and C.Fsym(a, b, c, d, e, f) != 1:
            return (a, b, c, d, e, f)
    return None


def spherical_defect(C: FusionData):
    K = C.field
    if C.qdim[0] != 1:
        return ("unit dimension", 0)
    for a in range(C.n):
        d = C.qdim[a]
        if not d:
            return ("zero dimension", a)
        if C.qdim[C.dual[a]] != d:
            return ("d_a != d_a*", a)
        if not C.fusion(a, C.dual[a], 0):
            return ("no unit in a (x) a*", a)
        x = C.Fsym(a, C.dual[a], a, a, 0, 0)
        if not x or (x * d) * (x * d) != 1:
            return ("F^{a a* a}_{a;00} d_a != +-1", a)
    for a in range(C.n):
        for b in range(C.n):
            if C.qdim[a] * C.qdim[b] != sum((C.qdim[c] for c in C.fuse(a, b)), K(0)):
                return ("dimensions are not a fusion character", (a, b))
    return None


def check_fusion(C: FusionData) -> FusionReport:
    """Exhaustive pentagon, unit and sphericality checks together with ``D^2``."""
    pw = pentagon_defect(C)
    uw = unit_defect(C)
    sw = spherical_defect(C)
    return FusionReport(pw is None, uw is None, sw is None, C.globaldim, pw, uw, sw)


def pointed_fusion(order: int, field: int = 1) -> FusionData:
    """``Vec_{Z/order}`` with trivial associator; ``phi_sq = 1/order``."""
    K = Field(field)
    N = [(a, b, (a + b) % order) for a in range(order) for b in range(order)]
    labels = [str(g) for g in range(order)]
    dual = [(-g) % order for g in range(order)]
    fd = FusionData(labels, dual, N, {}, [1] * order, field, phi_sq=K(1) / order,
                    name=f"Vec_Z{order}", strict=False)
    F = {t: K(1) for t in fd.admissible_tuples()}
    return FusionData(labels, dual, N, F, [1] * order, field, phi_sq=K(1) / order, name=f"Vec_Z{order}")


def fibonacci() -> FusionData:
    """Fibonacci over Q(sqrt 5) in a rational gauge: ``F^{ttt}_t = [[1/p, 1], [1/p, -1/p]]``."""
    K = Field(5)
    phi = K("1/2+1/2*sqrt(5)")
    ip = 1 / phi
    t = 1
    N = [(0, 0, 0), (0, t, t), (t, 0, t), (t, t, 0), (t, t, t)]
    pre = FusionData(["1", "tau"], [0, 1], N, {}, [1, phi], 5, strict=False)
    F = {k: K(1) for k in pre.admissible_tuples()}
    F[(t, t, t, t, 0, 0)] = ip
    F[(t, t, t, t, 0, t)] = K(1)
    F[(t, t, t, t, t, 0)] = ip
    F[(t, t, t, t, t, t)] = -ip
    D2 = 1 + phi * phi
    return FusionData(["1", "tau"], [0, 1], N, F, [1, phi], 5, phi_sq=1 / D2, name="Fibonacci")


# ---------------------------------------------------------------------------
# rigidity

def check_rigidity_strong(C: FusionData):
    """Strongness of the lax bimodule structure on the right adjoint of ``(x)``.

    The right adjoint sends ``c`` to ``sum N_{xy}^c x [x] y``.  Its left structure
    component at ``(a, y, x', c)`` maps the ``x``-channels ``((a x)_{x'} y)`` onto
    the ``e``-channels of ``R(a (x) c)`` through ``F^{axy}_{e; x' c}``; the right
    structure uses ``F^{xyb}_{e; c y'}``.  Returns ``(True, None)`` or
    ``(False, (side, index tuple))`` for the first non-invertible component.
    """
    R = range(C.n)
    for a, y, xp, c in product(R, repeat=4):
        rows = [e for e in R if C.fusion(a, c, e) and C.fusion(xp, y, e)]
        cols = [x for x in R if C.fusion(a, x, xp) and C.fusion(x, y, c)]
        M = la.zeros((len(rows), len(cols)), C.field)
        for i, e in enumerate(rows):
            for j, x in enumerate(cols):
                M[i, j] = C.Fsym(a, x, y, e, xp, c)
        if len(rows) != len(cols) or (rows and la.rank(M) != len(rows)):
            return False, ("left", (a, y, xp, c))
    for x, b, yp, c in product(R, repeat=4):
        rows = [e for e in R if C.fusion(c, b, e) and C.fusion(x, yp, e)]
        cols = [y for y in R if C.fusion(y, b, yp) and C.fusion(x, y, c)]
        M = la.zeros((len(rows), len(cols)), C.field)
        for i, e in enumerate(rows):
            for j, y in enumerate(cols):
                M[i, j] = C.Fsym(x, y, b, e, c, yp)
        if len(rows) != len(cols) or (rows and la.rank(M) != len(rows)):
            return False, ("right", (x, b, yp, c))
    return True, None


# ---------------------------------------------------------------------------
# Calabi-Yau categories on simples

@dataclass
class CYCategoryData:
    traces: list
    field: int = 1
    names: list | None = None
    dims: list | None = None  # simple-module dimensions when the data come from an algebra

    def __post_init__(self):
        K = Field(self.field)
        self.traces = [K(v) for v in self.traces]
        if self.names is None:
            self.names = [str(i) for i in range(len(self.traces))]
        if self.dims is None:
            self.dims = [1] * len(self.traces)

    @property
    def K(self) -> Field:
        return Field(self.field)

    @property
    def size(self) -> int:
        return len(self.traces)

    def trace(self, obj: tuple, f: np.ndarray):
        """``tr_obj(f) = sum_w lambda_{obj[w]} f[w, w]``."""
        return sum((self.traces[s] * f[w, w] for w, s in enumerate(obj)), self.K(0))

    def check_nondegenerate(self):
        for i, v in enumerate(self.traces):
            if not v:
                raise DegenerateTracePairing(f"trace of the identity on simple {i} vanishes")

    def to_json(self) -> dict:
        return {"kind": "cy", "schema_version": 1, "simples": self.size, "names": self.names,
                "traces": [str(v) for v in self.traces], "field": self.field, "dims": self.dims}

    @classmethod
    def from_json(cls, data: dict) -> CYCategoryData:
        d = int(data.get("field", 1))
        traces = [parse_scalar(v, d) for v in data["traces"]]
        if len(traces) != int(data.get("simples", len(traces))):
            raise ShapeError("number of traces differs from number of simples")
        return cls(traces, d, data.get("names"), data.get("dims"))


@dataclass
class SimpleFunctor:
    """Linear functor ``src -> dst`` given by the tuple of simples ``images[s]``."""
    src: CYCategoryData
    dst: CYCategoryData
    images: list = field(default_factory=list)

    def __post_init__(self):
        self.images = [tuple(int(v) for v in img) for img in self.images]
        if len(self.images) != self.src.size:
            raise ShapeError("one image per source simple is required")

    def obj(self, o: tuple) -> tuple:
        return tuple(t for s in o for t in self.images[s])

    def mor(self, M: np.ndarray, src_obj: tuple, dst_obj: tuple) -> np.ndarray:
        K = self.dst.K
        offs_s = _offsets([self.images[s] for s in src_obj])
        offs_d = _offsets([self.images[s] for s in dst_obj])
        out = la.zeros((len(self.obj(dst_obj)), len(self.obj(src_obj))), K)
        for u, t in enumerate(dst_obj):
            for v, s in enumerate(src_obj):
                if M[u, v]:
                    k = len(self.images[s])
                    for w in range(k):
                        out[offs_d[u] + w, offs_s[v] + w] = M[u, v]
        return out


def _offsets(blocks) -> list:
    out, acc = [], 0
    for b in blocks:
        out.append(acc)
        acc += len(b)
    return out


def _compose(F: SimpleFunctor, G: SimpleFunctor) -> SimpleFunctor:
    """``G o F`` (first ``F``)."""
    return SimpleFunctor(F.src, G.dst, [G.obj(F.images[s]) for s in range(F.src.size)])


def _identity(C: CYCategoryData) -> SimpleFunctor:
    return SimpleFunctor(C, C, [(s,) for s in range(C.size)])


def _on_object(components: list, obj: tuple, K: Field) -> np.ndarray:
    """Block diagonal ``alpha_obj`` from components on simples."""
    mats = [components[s] for s in obj]
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = la.zeros((rows, cols), K)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def check_zorro_right(F: SimpleFunctor, G: SimpleFunctor, eta: list, eps: list):
    """Zorro identities for ``F -| G`` with ``eta: 1 -> GF`` and ``eps: FG -> 1``."""
    C, D = F.src, F.dst
    for s in range(C.size):
        Fs = F.images[s]
        z = _on_object(eps, Fs, D.K) @ F.mor(eta[s], (s,), G.obj(Fs))
        if not la.array_equal(z, la.eye(len(Fs), D.K)):
            return False, ("F", s)
    for t in range(D.size):
        Gt = G.images[t]
        z = G.mor(eps[t], F.obj(Gt), (t,)) @ _on_object(eta, Gt, C.K)
        if not la.array_equal(z, la.eye(len(Gt), C.K)):
            return False, ("G", t)
    return True, None


def check_zorro_left(F: SimpleFunctor, G: SimpleFunctor, eta_L: list, eps_L: list):
    """Zorro identities for ``G -| F`` with ``eta_L: 1 -> FG`` and ``eps_L: GF -> 1``."""
    C, D = F.src, F.dst
    for t in range(D.size):
        Gt = G.images[t]
        z = _on_object(eps_L, Gt, C.K) @ G.mor(eta_L[t], (t,), F.obj(Gt))
        if not la.array_equal(z, la.eye(len(Gt), C.K)):
            return False, ("G", t)
    for s in range(C.size):
        Fs = F.images[s]
        z = F.mor(eps_L[s], G.obj(Fs), (s,)) @ _on_object(eta_L, Fs, D.K)
        if not la.array_equal(z, la.eye(len(Fs), D.K)):
            return False, ("F", s)
    return True, None


def left_adjoint_from_trace(F: SimpleFunctor, G: SimpleFunctor, eta_R: list, eps_R: list):
    """Left adjunction ``G -| F`` obtained from a right adjunction ``F -| G`` and the traces.

    ``eps_L_s = tau_s^{-1}[g -> tr_{F(s)}(eps_R_{F(s)} o F(g))]`` and
    ``eta_L_t = tau_t^{-1}[h -> tr_{G(t)}(G(h) o eta_R_{G(t)})]`` where ``tau``
    is the trace pairing, inverted simple by simple.  Returns
    ``(eta_L, eps_L)`` after verifying both Zorro identities.
    """
    C, D = F.src, F.dst
    C.check_nondegenerate()
    D.check_nondegenerate()
    ok, w = check_zorro_right(F, G, eta_R, eps_R)
    if not ok:
        raise ValueError(f"right adjunction violates a Zorro identity at {w}")
    GF = _compose(F, G)
    FG = _compose(G, F)
    eps_L = []
    for s in range(C.size):
        src = GF.images[s]
        x = la.zeros((1, len(src)), C.K)
        for u, lab in enumerate(src):
            if lab != s:
                continue
            g = la.zeros((len(src), 1), C.K)
            g[u, 0] = C.K(1)
            Fg = F.mor(g, (s,), src)
            x[0, u] = D.trace(F.images[s], _on_object(eps_R, F.images[s], D.K) @ Fg) / C.traces[s]
        eps_L.append(x)
    eta_L = []
    for t in range(D.size):
        tgt = FG.images[t]
        y = la.zeros((len(tgt), 1), D.K)
        for u, lab in enumerate(tgt):
            if lab != t:
                continue
            h = la.zeros((1, len(tgt)), D.K)
            h[0, u] = D.K(1)
            Gh = G.mor(h, tgt, (t,))
            y[u, 0] = C.trace(G.images[t], Gh @ _on_object(eta_R, G.images[t], C.K)) / D.traces[t]
        eta_L.append(y)
    ok, w = check_zorro_left(F, G, eta_L, eps_L)
    if not ok:
        raise ValueError(f"left adjunction from traces violates a Zorro identity at {w}")
    return eta_L, eps_L


def check_pivotal_equivalence(F: SimpleFunctor) -> bool:
    """True iff the equivalence ``F`` preserves the trace of every simple."""
    imgs = F.images
    if any(len(i) != 1 for i in imgs) or sorted(i[0] for i in imgs) != list(range(F.dst.size)):
        raise NotAnEquivalence("functor is not a bijection on simples")
    return all(F.src.traces[s] == F.dst.traces[imgs[s][0]] for s in range(F.src.size))


def identity_adjunction(F: SimpleFunctor, G: SimpleFunctor):
    """Unit/counit for mutually inverse bijections on simples."""
    K1, K2 = F.src.K, F.dst.K
    eta = [la.eye(1, K1) for _ in range(F.src.size)]
    eps = [la.eye(1, K2) for _ in range(F.dst.size)]
    return eta, eps


# ---------------------------------------------------------------------------
# module categories with trace

@dataclass
class ModuleCategoryData:
    """Left module over ``base`` (and optionally right module over ``right_base``).

    ``action`` holds triples ``(a, m, n)`` with ``N_{am}^n = 1``; ``assoc`` maps
    ``(a, b, m, n, c, p)`` to ``M^{abm}_{n; c p}``: ``((a b)_c m)_n -> (a (b m)_p)_n``.
    Right data use ``(m, a, n)`` and ``(m, a, b, n, p, e)``:
    ``((m a)_p b)_n -> (m (a b)_e)_n``.
    """
    base: FusionData
    objects: list
    action: set
    assoc: dict
    traces: list
    right_base: FusionData | None = None
    right_action: set | None = None
    right_assoc: dict | None = None

    def __post_init__(self):
        K = self.base.field
        self.action = {tuple(t) for t in self.action}
        self.assoc = {tuple(k): K(v) for k, v in self.assoc.items()}
        self.traces = [K(v) for v in self.traces]
        if self.right_action is not None:
            self.right_action = {tuple(t) for t in self.right_action}
            self.right_assoc = {tuple(k): K(v) for k, v in self.right_assoc.items()}

    @property
    def size(self) -> int:
        return len(self.objects)

    def acts(self, a, m, n) -> bool:
        return (a, m, n) in self.action

    def M(self, a, b, m, n, c, p):
        C = self.base
        if not (C.fusion(a, b, c) and self.acts(c, m, n) and self.acts(b, m, p) and self.acts(a, p, n)):
            return C.field(0)
        return self.assoc.get((a, b, m, n, c, p), C.field(0))

    def Mmatrix(self, a, b, m, n):
        C = self.base
        cs = [c for c in C.fuse(a, b) if self.acts(c, m, n)]
        ps = [p for p in range(self.size) if self.acts(b, m, p) and self.acts(a, p, n)]
        Mx = la.zeros((len(cs), len(ps)), C.field)
        for i, c in enumerate(cs):
            for j, p in enumerate(ps):
                Mx[i, j] = self.M(a, b, m, n, c, p)
        return cs, ps, Mx

    def racts(self, m, a, n) -> bool:
        return self.right_action is not None and (m, a, n) in self.right_action

    def R(self, m, a, b, n, p, e):
        C = self.right_base
        if not (self.racts(m, a, p) and self.racts(p, b, n) and C.fusion(a, b, e) and self.racts(m, e, n)):
            return C.field(0)
        return self.right_assoc.get((m, a, b, n, p, e), C.field(0))

    def Rmatrix(self, m, a, b, n):
        C = self.right_base
        ps = [p for p in range(self.size) if self.racts(m, a, p) and self.racts(p, b, n)]
        es = [e for e in C.fuse(a, b) if self.racts(m, e, n)]
        Rx = la.zeros((len(ps), len(es)), C.field)
        for i, p in enumerate(ps):
            for j, e in enumerate(es):
                Rx[i, j] = self.R(m, a, b, n, p, e)
        return ps, es, Rx

    def with_traces(self, traces) -> ModuleCategoryData:
        return ModuleCategoryData(self.base, self.objects, self.action, self.assoc, traces,
                                  self.right_base, self.right_action, self.right_assoc)

    def to_json(self) -> dict:
        out = {"kind": "module", "schema_version": 1, "base": self.base.to_json(), "objects": self.objects,
               "action": sorted([list(t) for t in self.action]),
               "assoc": [list(k) + [str(v)] for k, v in sorted(self.assoc.items())],
               "traces": [str(v) for v in self.traces]}
        if self.right_base is not None:
            out["right_base"] = self.right_base.to_json()
            out["right_action"] = sorted([list(t) for t in self.right_action])
            out["right_assoc"] = [list(k) + [str(v)] for k, v in sorted(self.right_assoc.items())]
        return out

    @classmethod
    def from_json(cls, data: dict, resolve=None) -> ModuleCategoryData:
        resolve = resolve or FusionData.from_json
        base = resolve(data["base"])
        d = base.field.d
        assoc = {tuple(e[:6]): parse_scalar(e[6], d) for e in data["assoc"]}
        kw = {}
        if data.get("right_base") is not None:
            kw["right_base"] = resolve(data["right_base"])
            kw["right_action"] = {tuple(t) for t in data["right_action"]}
            kw["right_assoc"] = {tuple(e[:6]): parse_scalar(e[6], d) for e in data["right_assoc"]}
        return cls(base, list(data["objects"]), {tuple(t) for t in data["action"]}, assoc,
                   [parse_scalar(v, d) for v in data["traces"]], **kw)


def regular_module(C: FusionData, traces=None, bimodule: bool = True) -> ModuleCategoryData:
    """``C`` over itself; traces default to the quantum dimensions."""
    action = {(a, m, n) for (a, m, n) in C.N}
    assoc = {(a, b, m, n, c, p): C.Fsym(a, b, m, n, c, p) for (a, b, m, n, c, p) in C.admissible_tuples()}
    kw = {}
    if bimodule:
        kw = {"right_base": C, "right_action": set(action), "right_assoc": dict(assoc)}
    return ModuleCategoryData(C, list(C.labels), action, assoc,
                              list(C.qdim) if traces is None else traces, **kw)


def check_module_pentagon(M: ModuleCategoryData):
    """Mixed pentagon(s).  Returns ``(True, None)`` or ``(False, witness)``.

    Left: ``M^{fcx}_{y;gl} M^{abl}_{y;fk} = sum_h F^{abc}_{g;fh} M^{ahx}_{y;gk} M^{bcx}_{k;hl}``.
    """
    C = M.base
    RC, RM = range(C.n), range(M.size)
    for a, b, c in product(RC, repeat=3):
        for x, y, k, l in product(RM, repeat=4):
            for f in C.fuse(a, b):
                for g in C.fuse(f, c):
                    lhs = M.M(f, c, x, y, g, l) * M.M(a, b, l, y, f, k)
                    rhs = C.field(0)
                    for h in C.fuse(b, c):
                        t = C.Fsym(a, b, c, g, f, h)
                        if t:
                            rhs = rhs + t * M.M(a, h, x, y, g, k) * M.M(b, c, x, k, h, l)
                    if lhs != rhs:
                        return False, ("left", (a, b, c, x, y, k, l, f, g))
    if M.right_action is None:
        return True, None
    C = M.right_base
    RC = range(C.n)
    # R^{pbc}_{n;q,l} R^{mal}_{n;p,k} = sum_h R^{mab}_{q;p,h} R^{mhc}_{n;q,k} F^{abc}_{k;h,l}
    for a, b, c in product(RC, repeat=3):
        for m, n, p, q in product(RM, repeat=4):
            for l in C.fuse(b, c):
                for k in C.fuse(a, l):
                    lhs = M.R(p, b, c, n, q, l) * M.R(m, a, l, n, p, k)
                    rhs = C.field(0)
                    for h in C.fuse(a, b):
                        t = M.R(m, a, b, q, p, h)
                        if t:
                            rhs = rhs + t * M.R(m, h, c, n, q, k) * C.Fsym(a, b, c, k, h, l)
                    if lhs != rhs:
                        return False, ("right", (a, b, c, m, n, p, q, l, k))
    return True, None


def check_module_trace(M: ModuleCategoryData):
    """Trace compatibility on simples.  Returns ``(True, None)`` or ``(False, witness)``.

    Closing ``c`` around the projection onto ``n`` inside ``c |> m`` gives
    ``d_c M^{c*cm}_{m;0n} (M^{-1})_{n0} id_m``, so the left equation reads
    ``lambda_n = d_c lambda_m M_{0n} (M^{-1})_{n0}``; the right one uses
    ``R^{mcc*}_{m;n0} (R^{-1})_{0n}``.
    """
    ok, w = check_module_pentagon(M)
    if not ok:
        return False, ("pentagon",) + tuple(w)
    C = M.base
    K = C.field
    for c in range(C.n):
        cd = C.dual[c]
        for m in range(M.size):
            cs, ps, Mx = M.Mmatrix(cd, c, m, m)
            Minv = la.inverse(Mx, K) if cs else Mx
            for n in range(M.size):
                if not M.acts(c, m, n):
                    continue
                i, j = cs.index(0), ps.index(n)
                val = C.qdim[c] * M.traces[m] * Mx[i, j] * Minv[j, i]
                if val != M.traces[n]:
                    return False, ("left", (c, m, n))
    if M.right_action is None:
        return True, None
    C = M.right_base
    for c in range(C.n):
        cd = C.dual[c]
        for m in range(M.size):
            ps, es, Rx = M.Rmatrix(m, c, cd, m)
            Rinv = la.inverse(Rx, K) if ps else Rx
            for n in range(M.size):
                if not M.racts(m, c, n):
                    continue
                i, j = ps.index(n), es.index(0)
                val = C.qdim[c] * M.traces[m] * Rx[i, j] * Rinv[j, i]
                if val != M.traces[n]:
                    return False, ("right", (c, m, n))
    return True, None
