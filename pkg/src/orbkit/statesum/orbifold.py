"""Defect state sums on stratified triangulations.

A stratification assigns every vertex of the triangulation to a region;
regions are the dual top strata and carry algebra labels, and the defects are
the dual codimension-1 strata separating regions, labelled by bimodules (2d)
or bimodule categories (3d).  A simplex meeting three regions is not
transversal to the stratification and is rejected.

In 2d, uncrossed triangles carry the region's lattice tensor.  A crossed
triangle meets the defect in two edges and carries the action of its
uncrossed edge's algebra on the defect label, read in the direction that keeps
the left algebra on the left.  Each connected region component ``c``
contributes ``psi_c^{chi_c}`` in one host simplex.

In 3d, edges carry simple objects of the region's category or of the defect's
bimodule category.  Crossing tetrahedra use the module associators.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .. import linalg as la
from ..bimodules import Bimodule, delta_separable_form, same_algebra
from ..errors import LabelAdjacencyViolation, SchemaVersionMismatch, ShapeError, TransversalityViolation
from ..frobenius import FrobeniusStructure
from ..fusioncat import FusionData, ModuleCategoryData
from .complex import OrderedTriangulation, _UnionFind
from .contract import ContractionStats, Factor, contract, factor_from_slots
from .fhk import EDGE_SLOTS, StateSumResult, _dense_entries, cyclic_slots, euler_power, triangle_tensor
from .tv import TET_EDGES, tet_entries

__all__ = ["StratifiedComplex", "orbifold_evaluate", "HOST_POLICIES"]

HOST_POLICIES = ("first", "last", "crossed")
SCHEMA_VERSION = 1


@dataclass
class StratifiedComplex:
    """A triangulation with a region per vertex and labels on regions and defects.

    ``defect_labels[(r, s)]`` labels the defect with region ``r`` on its left
    (the left algebra or category of the label) and ``s`` on its right.
    """
    base: OrderedTriangulation
    regions: dict
    region_labels: dict
    defect_labels: dict = field(default_factory=dict)
    name: str | None = None

    def region(self, v):
        try:
            return self.regions[v]
        except KeyError:
            raise LabelAdjacencyViolation(f"vertex {v} has no region") from None

    def regions_of(self, t: int, S=None) -> set:
        c = self.base.cells[t]
        S = S if S is not None else tuple(range(self.base.dim + 1))
        return {self.region(c[(i,)]) for i in S}

    def defect(self, r, s):
        """``(label, left_region)`` for the defect between regions ``r`` and ``s``."""
        if (r, s) in self.defect_labels:
            return self.defect_labels[(r, s)], r
        if (s, r) in self.defect_labels:
            return self.defect_labels[(s, r)], s
        raise LabelAdjacencyViolation(f"no defect label between regions {r!r} and {s!r}")

    def algebra(self, r):
        if r not in self.region_labels:
            raise LabelAdjacencyViolation(f"region {r!r} carries no label")
        return self.region_labels[r]

    @classmethod
    def trivial(cls, T: OrderedTriangulation, label, name=None) -> StratifiedComplex:
        return cls(T, {v: "R" for v in T.cells_of_dim(0)}, {"R": label}, {}, name=name)

    @classmethod
    def from_vertex_keys(cls, T: OrderedTriangulation, region_of, region_labels, defect_labels=None,
                         name=None) -> StratifiedComplex:
        """Regions from a function on vertex keys (labels or lattice points)."""
        regions = {}
        for key, cid in T.keys.items():
            if T.cell_dim.get(cid) == 0:
                regions[cid] = region_of(_vertex_label(key))
        return cls(T, regions, region_labels, defect_labels or {}, name=name)

    # serialisation -------------------------------------------------------
    def to_json(self, label_ref=None) -> dict:
        ref = label_ref or (lambda lab: lab.to_json())
        return {"kind": "stratified", "schema_version": SCHEMA_VERSION, "name": self.name,
                "triangulation": self.base.to_json(),
                "regions": [[v, r] for v, r in sorted(self.regions.items())],
                "labels": {r: ref(lab) for r, lab in sorted(self.region_labels.items())},
                "defects": [{"left": r, "right": s, "label": ref(lab)}
                            for (r, s), lab in sorted(self.defect_labels.items())]}

    @classmethod
    def from_json(cls, data: dict, resolve) -> StratifiedComplex:
        """``resolve(ref, context)`` turns label references into objects."""
        ver = data.get("schema_version", SCHEMA_VERSION)
        if ver != SCHEMA_VERSION:
            raise SchemaVersionMismatch(f"stratified schema {ver}, expected {SCHEMA_VERSION}")
        T = OrderedTriangulation.from_json(data["triangulation"])
        regions = {int(v): r for v, r in data["regions"]}
        labels = {r: resolve(ref, None) for r, ref in data["labels"].items()}
        defects = {(d["left"], d["right"]): resolve(d["label"], (labels[d["left"]], labels[d["right"]]))
                   for d in data.get("defects", [])}
        return cls(T, regions, labels, defects, name=data.get("name"))


def _vertex_label(key):
    # vertex keys are ``(label,)`` for vertex tuples and ``(point, ())`` for lattices
    if isinstance(key, tuple) and len(key) == 1:
        return key[0]
    if isinstance(key, tuple) and len(key) == 2 and key[1] == ():
        return key[0]
    return key


def orbifold_evaluate(S: StratifiedComplex, host_policy: str = "first") -> StateSumResult:
    """Evaluate the defect state sum; ``host_policy`` picks where Euler insertions sit."""
    if host_policy not in HOST_POLICIES:
        raise ValueError(f"unknown host policy {host_policy!r}")
    T = S.base
    T.require_closed()
    for t in range(T.n_simplices):
        if len(S.regions_of(t)) > 2:
            raise TransversalityViolation(f"simplex {t} meets {len(S.regions_of(t))} regions")
    if T.dim == 2:
        return _evaluate_2d(S, host_policy)
    if T.dim == 3:
        return _evaluate_3d(S)
    raise ShapeError("stratified evaluation needs dimension 2 or 3")


# ---------------------------------------------------------------------------
# two dimensions

def _edge_ends(T, first, e):
    t, Se = first[e]
    return T.cells[t][(Se[0],)], T.cells[t][(Se[1],)]


def _region_components(S: StratifiedComplex):
    """Connected components of each region's subcomplex with their Euler characteristics."""
    T = S.base
    first = T.first_occurrence()
    uf = _UnionFind()
    verts = T.cells_of_dim(0)
    for v in verts:
        uf.find(v)
    inner_edges = []
    for e in T.cells_of_dim(1):
        a, b = _edge_ends(T, first, e)
        if S.region(a) == S.region(b):
            uf.union(a, b)
            inner_edges.append((e, a))
    comp_of = {v: uf.find(v) for v in verts}
    chi = defaultdict(int)
    for v in verts:
        chi[comp_of[v]] += 1
    for e, a in inner_edges:
        chi[comp_of[a]] -= 1
    for t in range(T.n_simplices):
        if len(S.regions_of(t)) == 1:
            chi[comp_of[T.cells[t][(0,)]]] += 1
    return comp_of, dict(chi)


def _hosts(S: StratifiedComplex, comp_of, policy):
    """One host simplex per region component."""
    T = S.base
    uncrossed = defaultdict(list)
    touching = defaultdict(list)
    for t in range(T.n_simplices):
        comps = {comp_of[T.cells[t][(i,)]] for i in range(T.dim + 1)}
        if len(S.regions_of(t)) == 1:
            uncrossed[next(iter(comps))].append(t)
        else:
            for c in comps:
                touching[c].append(t)
    out = {}
    for c in set(comp_of.values()):
        if policy == "crossed" and touching[c]:
            out[c] = touching[c][0]
        elif uncrossed[c]:
            out[c] = uncrossed[c][0] if policy == "first" else uncrossed[c][-1]
        else:
            out[c] = touching[c][0] if policy == "first" else touching[c][-1]
    return out


def _check_bimodule(X, left_alg, right_alg, r, s):
    if not isinstance(X, Bimodule):
        raise LabelAdjacencyViolation(f"defect between {r!r} and {s!r} is not labelled by a bimodule")
    if not same_algebra(X.left, left_alg) or not same_algebra(X.right, right_alg):
        raise LabelAdjacencyViolation(f"bimodule on the defect {r!r}|{s!r} does not act by the region algebras")


def _evaluate_2d(S: StratifiedComplex, policy):
    T = S.base
    first = T.first_occurrence()
    names = sorted({S.region(v) for v in T.cells_of_dim(0)}, key=str)
    algs = {}
    for r in names:
        lab = S.algebra(r)
        if not isinstance(lab, FrobeniusStructure):
            raise LabelAdjacencyViolation(f"region {r!r} needs a Frobenius algebra label")
        algs[r] = delta_separable_form(lab)
    K = algs[names[0]].F
    comp_of, chi = _region_components(S)
    hosts = _hosts(S, comp_of, policy)
    host_of = defaultdict(list)
    for c, t in hosts.items():
        host_of[t].append(c)
    comp_region = {c: S.region(v) for v, c in comp_of.items()}

    def insertion(c):
        return euler_power(algs[comp_region[c]], chi[c])

    facs = []
    edge_slots = defaultdict(list)
    crossed_edges = {}
    for e in T.cells_of_dim(1):
        a, b = _edge_ends(T, first, e)
        ra, rb = S.region(a), S.region(b)
        if ra != rb:
            X, left = S.defect(ra, rb)
            right = rb if left == ra else ra
            _check_bimodule(X, algs[left], algs[right], left, right)
            crossed_edges[e] = (X, left)
    for t, c in enumerate(T.cells):
        regs = S.regions_of(t)
        if len(regs) == 1:
            (r,) = regs
            ds = algs[r]
            z = None
            for comp in host_of.get(t, ()):
                w = insertion(comp)
                z = w if z is None else ds.algebra.multiply(z, w)
            C = triangle_tensor(ds, z)
            slots = [("s", t, k) for k in cyclic_slots(T.signs[t])]
            facs.append(factor_from_slots(slots, _dense_entries(C)))
            for k, Se in enumerate(EDGE_SLOTS):
                edge_slots[c[Se]].append(("s", t, k))
            continue
        facs.append(_crossed_triangle(S, t, algs, crossed_edges, edge_slots,
                                      [(comp, insertion(comp)) for comp in host_of.get(t, ())], comp_region))
    for e, sl in sorted(edge_slots.items()):
        if e in crossed_edges:
            continue
        a, _ = _edge_ends(T, first, e)
        h = algs[S.region(a)].copairing
        if len(sl) != 2:
            raise LabelAdjacencyViolation(f"edge {e} is not shared by two triangles")
        facs.append(factor_from_slots(sl, _dense_entries(h)))
    stats = ContractionStats()
    res = contract(facs, zero=K(0), stats=stats)
    out = stats.as_dict()
    out.update(triangles=T.n_simplices, crossed_edges=len(crossed_edges), components=len(chi),
               host_policy=policy)
    return StateSumResult(res.table[()], out)


def _crossed_triangle(S, t, algs, crossed_edges, edge_slots, inserts, comp_region):
    """``T[a, x_in, x_out] = (act(e_a))[x_out, x_in]`` with the Euler insertions composed in."""
    T = S.base
    c = T.cells[t]
    ccw = (0, 1, 2) if T.signs[t] > 0 else (0, 2, 1)
    reg = [S.region(c[(i,)]) for i in range(3)]
    # the apex is the vertex whose region differs from the other two
    apex = next(i for i in range(3) if reg.count(reg[i]) == 1)
    k = ccw.index(apex)
    v, p, q = ccw[k], ccw[(k + 1) % 3], ccw[(k + 2) % 3]
    e_vp = c[tuple(sorted((v, p)))]
    e_vq = c[tuple(sorted((v, q)))]
    pq = tuple(sorted((p, q)))
    slot = ("s", t, EDGE_SLOTS.index(pq))
    edge_slots[c[pq]].append(slot)
    X, left = crossed_edges[e_vp]
    if reg[v] == left:
        e_in, e_out = e_vp, e_vq
    else:
        e_in, e_out = e_vq, e_vp
    side_left = reg[p] == left
    acts = X.lact if side_left else X.ract
    K = X.F
    M = la.eye(X.m, K)
    for comp, z in inserts:
        M = M @ (X.left_op(z) if comp_region[comp] == left else X.right_op(z))
    entries = []
    for a, A_a in enumerate(acts):
        prod = M @ A_a
        for x_out in range(X.m):
            for x_in in range(X.m):
                val = prod[x_out, x_in]
                if val:
                    entries.append(((a, x_in, x_out), val))
    return factor_from_slots([slot, ("x", e_in), ("x", e_out)], entries)


# ---------------------------------------------------------------------------
# three dimensions

def _is_regular(M: ModuleCategoryData, C: FusionData, D: FusionData) -> bool:
    """``M`` is ``C`` as a bimodule over itself (and both sides carry the same data)."""
    if M.right_base is None or M.size != C.n or C.F != D.F or M.base.F != C.F or M.right_base.F != C.F:
        return False
    if set(M.action) != set(C.N) or set(M.right_action) != set(C.N):
        return False
    tuples = C.admissible_tuples()
    return all(M.M(*k) == C.Fsym(*k) and M.R(*k) == C.Fsym(*k) for k in tuples)


def _module_symbol(M: ModuleCategoryData, kind: str):
    """Symbol ``(a, b, c, d, e, f, sign)`` from the left (``M``) or right (``R``) associator."""
    cache = {}

    def inverse(key4):
        if key4 not in cache:
            if kind == "M":
                rows, cols, mat = M.Mmatrix(*key4)
            else:
                rows, cols, mat = M.Rmatrix(*key4)
            inv = la.inverse(mat, M.base.field) if len(rows) else mat
            cache[key4] = (rows, cols, inv)
        return cache[key4]

    def symbol(a, b, c, d, e, f, sign):
        get = M.M if kind == "M" else M.R
        if sign > 0:
            return get(a, b, c, d, e, f)
        rows, cols, inv = inverse((a, b, c, d))
        if e not in rows or f not in cols:
            return M.base.field(0)
        return inv[cols.index(f), rows.index(e)]
    return symbol


def _evaluate_3d(S: StratifiedComplex):
    T = S.base
    names = sorted({S.region(v) for v in T.cells_of_dim(0)}, key=str)
    cats = {}
    for r in names:
        lab = S.algebra(r)
        if not isinstance(lab, FusionData):
            raise LabelAdjacencyViolation(f"region {r!r} needs fusion data as its label")
        cats[r] = lab
    K = cats[names[0]].field
    first = T.first_occurrence()
    edge_weight = {}
    edge_label_kind = {}
    for e in T.cells_of_dim(1):
        a, b = _edge_ends(T, first, e)
        ra, rb = S.region(a), S.region(b)
        if ra == rb:
            edge_weight[e] = list(cats[ra].qdim)
            edge_label_kind[e] = ("region", ra)
        else:
            M, left = S.defect(ra, rb)
            right = rb if left == ra else ra
            if not isinstance(M, ModuleCategoryData) or not _is_regular(M, cats[left], cats[right]):
                raise LabelAdjacencyViolation(
                    f"defect {left!r}|{right!r}: only the regular bimodule category is supported in 3d")
            edge_weight[e] = list(M.traces)
            edge_label_kind[e] = ("defect", M)
    facs = []
    for t, c in enumerate(T.cells):
        regs = [S.region(c[(i,)]) for i in range(4)]
        symbol = None
        if len(set(regs)) == 1:
            C = cats[regs[0]]
        else:
            M = edge_label_kind[next(c[Se] for Se in TET_EDGES if regs[Se[0]] != regs[Se[1]])][1]
            C = M.base
            lone = [i for i in range(4) if regs.count(regs[i]) == 1]
            if lone == [3]:
                symbol = _module_symbol(M, "M")
            elif lone == [0]:
                symbol = _module_symbol(M, "R")
            # the remaining configurations use the middle associator, which is the
            # base associator for the regular bimodule category
        entries = _tet_weights(C, T.signs[t], symbol, [edge_weight[c[(0, 3)]]])
        slots = [("e", c[Se]) for Se in TET_EDGES]
        facs.append(factor_from_slots(slots, entries))
    for e in T.cells_of_dim(1):
        facs.append(Factor((("e", e),), {(x,): w for x, w in enumerate(edge_weight[e])}))
    for f in T.cells_of_dim(2):
        t, Sf = first[f]
        le = T.cells[t][(Sf[0], Sf[-1])]
        facs.append(Factor((("e", le),), {(x,): K(1) / w for x, w in enumerate(edge_weight[le])}))
    value_scale = K(1)
    for v in T.cells_of_dim(0):
        value_scale = value_scale * _vertex_weight(cats[S.region(v)])
    stats = ContractionStats()
    res = contract(facs, zero=K(0), stats=stats)
    out = stats.as_dict()
    out.update(tetrahedra=T.n_simplices, regions=len(names), defects=len(S.defect_labels))
    return StateSumResult(res.table[()] * value_scale, out)


def _tet_weights(C: FusionData, sign: int, symbol, long_weights):
    """Tetrahedron entries with the trace of the ``x03`` label in place of ``d_{x03}``."""
    (w03,) = long_weights
    base = tet_entries(C, sign, symbol)
    out = []
    for key, val in base:
        d = key[3]
        out.append((key, val / C.qdim[d] * w03[d]))
    return out


def _vertex_weight(C: FusionData):
    """``1 / sum_i lambda_i^2`` of the region's Calabi-Yau traces."""
    D2 = sum((d * d for d in C.qdim), C.field(0))
    return C.field(1) / D2
