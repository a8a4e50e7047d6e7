"""Turaev-Viro state sums on ordered 3-dimensional triangulations.

Edges carry simple labels.  A positively oriented tetrahedron ``0<1<2<3``
contributes ``F^{x01 x12 x23}_{x03; x02 x13} d_{x03}``, a negative one the
matching entry of the inverse F-matrix times ``d_{x03}``.  Every edge adds
``d_x``, every triangle ``1/d`` of its long edge ``(first, last)`` and every
vertex ``phi^2 = 1/D^2``.  The triangle factors cancel the gauge freedom of the
F-symbols, since each triangle sits in the F-move source of one neighbour and
in the target of the other.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from ..errors import MissingEulerDatum, ShapeError
from ..fusioncat import FusionData
from .complex import OrderedTriangulation
from .contract import ContractionStats, Factor, contract, factor_from_slots
from .fhk import StateSumResult

__all__ = ["tv_evaluate", "tet_entries", "tv_factors", "TET_EDGES"]

# (x01, x12, x23, x03, x02, x13) as local vertex pairs
TET_EDGES = ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3))


def tet_entries(C: FusionData, sign: int, symbol=None):
    """Nonzero tetrahedron weights keyed by ``(x01, x12, x23, x03, x02, x13)``.

    ``symbol(a, b, c, d, e, f)`` overrides the F-symbol (used for module
    associators on defect-crossing tetrahedra); ``sign < 0`` uses the inverse.
    """
    return _tet_entries_cached(C, sign) if symbol is None else _tet_entries(C, sign, symbol)


@lru_cache(maxsize=64)
def _tet_entries_cached(C: FusionData, sign: int):
    return _tet_entries(C, sign, None)


def _tet_entries(C: FusionData, sign: int, symbol):
    out = []
    R = range(C.n)
    for a, b, c in product(R, repeat=3):
        for e in C.fuse(a, b):
            for d in C.fuse(e, c):
                for f in C.fuse(b, c):
                    if not C.fusion(a, f, d):
                        continue
                    if symbol is not None:
                        w = symbol(a, b, c, d, e, f, sign)
                    elif sign > 0:
                        w = C.Fsym(a, b, c, d, e, f)
                    else:
                        w = C.Finv(a, b, c, d, f, e)
                    w = w * C.qdim[d]
                    if w:
                        out.append(((a, b, c, d, e, f), w))
    return tuple(out)


def tv_factors(T: OrderedTriangulation, C: FusionData, open_edges=(), weight=None):
    """Factors over edge variables ``("e", id)``.

    ``weight`` may map cell kinds to overrides; ``open_edges`` lose their
    edge weight (it is applied by the caller when gluing).
    """
    K = C.field
    facs = []
    for t, c in enumerate(T.cells):
        slots = [("e", c[S]) for S in TET_EDGES]
        facs.append(factor_from_slots(slots, tet_entries(C, T.signs[t])))
    opened = set(open_edges)
    for e in T.cells_of_dim(1):
        if e in opened:
            continue
        facs.append(Factor((("e", e),), {(x,): C.qdim[x] for x in range(C.n)}))
    first = T.first_occurrence()
    inv = [K(1) / d for d in C.qdim]
    for f in T.cells_of_dim(2):
        if f in opened:
            continue
        t, S = first[f]
        long_edge = T.cells[t][(S[0], S[-1])]
        facs.append(Factor((("e", long_edge),), {(x,): inv[x] for x in range(C.n)}))
    return facs


def tv_evaluate(T: OrderedTriangulation, C: FusionData) -> StateSumResult:
    """The Turaev-Viro invariant of a closed oriented 3-manifold."""
    if T.dim != 3:
        raise ShapeError("tv_evaluate needs a 3-dimensional triangulation")
    T.require_closed()
    if C.phi_sq is None:
        raise MissingEulerDatum(f"{C!r} carries no Euler datum phi")
    stats = ContractionStats()
    res = contract(tv_factors(T, C), zero=C.field(0), stats=stats)
    value = res.table[()] * C.phi_sq ** T.count(0)
    out = stats.as_dict()
    out.update(tetrahedra=T.n_simplices, vertices=T.count(0), edges=T.count(1))
    return StateSumResult(value, out)
