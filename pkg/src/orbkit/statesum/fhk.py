"""Two-dimensional lattice state sums of separable symmetric Frobenius algebras.

The algebra is first brought to its Delta-separable form ``(A, eps')`` with
Euler datum ``psi``.  Every triangle contributes ``eps'`` of the product of its
three edge variables read around its boundary in the orientation direction,
every edge the copairing between its two triangle slots, and each connected
component one insertion ``psi^chi``.  For ``Q`` with ``eps = lambda`` this gives
``lambda^(2g - 2)`` on a genus ``g`` surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..bimodules import delta_separable_form
from ..errors import ShapeError
from ..frobenius import FrobeniusStructure
from .complex import OrderedTriangulation
from .contract import ContractionStats, contract, factor_from_slots

__all__ = ["StateSumResult", "fhk_evaluate", "triangle_tensor", "euler_power", "fhk_factors"]

EDGE_SLOTS = ((0, 1), (1, 2), (0, 2))


@dataclass
class StateSumResult:
    value: object
    stats: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"value": str(self.value), "stats": dict(self.stats)}


def euler_power(fs: FrobeniusStructure, k: int):
    """``psi^k`` for the recorded Euler datum (``k`` may be negative)."""
    A = fs.algebra
    base = fs.euler
    if k < 0:
        base = A.inverse_of(base)
        k = -k
    out = A.unit
    for _ in range(k):
        out = A.multiply(out, base)
    return out


def triangle_tensor(fs: FrobeniusStructure, insert=None) -> np.ndarray:
    """``C[a, b, c] = eps(e_a e_b e_c z)`` with ``z`` the optional central insertion."""
    A = fs.algebra
    counit = fs.counit if insert is None else A.right_matrix(insert).T @ fs.counit
    ab = A.mul  # e_a e_b = sum_k ab[a, b, k] e_k
    abc = np.einsum("abk,kcl->abcl", ab, A.mul)
    return np.einsum("abcl,l->abc", abc, counit)


def cyclic_slots(sign: int):
    """Edge-slot order around a triangle: positive ``01, 12, 20``; negative ``02, 21, 10``."""
    return (0, 1, 2) if sign > 0 else (2, 1, 0)


def _dense_entries(T: np.ndarray):
    for idx in product(*(range(s) for s in T.shape)):
        v = T[idx]
        if v:
            yield idx, v


def fhk_factors(T: OrderedTriangulation, fs: FrobeniusStructure, host_insertions: dict | None = None,
                skip_edges=()):
    """Factors of the lattice sum; variables are ``("s", t, k)`` for slot ``k`` of triangle ``t``.

    ``host_insertions`` maps a triangle to a central element multiplied into
    its tensor.  Edges in ``skip_edges`` get no copairing (their slots stay open).
    """
    facs = []
    host_insertions = host_insertions or {}
    plain = triangle_tensor(fs)
    for t, c in enumerate(T.cells):
        C = plain if t not in host_insertions else triangle_tensor(fs, host_insertions[t])
        order = cyclic_slots(T.signs[t])
        slots = [("s", t, k) for k in order]
        facs.append(factor_from_slots(slots, _dense_entries(C)))
    h = fs.copairing
    edge_slots = {}
    for t, c in enumerate(T.cells):
        for k, S in enumerate(EDGE_SLOTS):
            edge_slots.setdefault(c[S], []).append(("s", t, k))
    skip = set(skip_edges)
    for e, sl in sorted(edge_slots.items()):
        if e in skip:
            continue
        if len(sl) != 2:
            continue
        facs.append(factor_from_slots(sl, _dense_entries(h)))
    return facs, edge_slots


def fhk_evaluate(T: OrderedTriangulation, fs: FrobeniusStructure) -> StateSumResult:
    """Euler-corrected lattice partition function of a closed oriented surface."""
    if T.dim != 2:
        raise ShapeError("fhk_evaluate needs a 2-dimensional triangulation")
    T.require_closed()
    ds = delta_separable_form(fs)
    hosts = {}
    for comp in T.components():
        chi = _component_euler(T, comp)
        hosts[comp[0]] = euler_power(ds, chi)
    facs, _ = fhk_factors(T, ds, hosts)
    stats = ContractionStats()
    res = contract(facs, zero=ds.F(0), stats=stats)
    out = stats.as_dict()
    out.update(triangles=T.n_simplices, euler_characteristic=T.euler_characteristic)
    return StateSumResult(res.table[()], out)


def _component_euler(T: OrderedTriangulation, comp) -> int:
    cells = set()
    for t in comp:
        cells.update(T.cells[t].values())
    return sum((-1) ** T.cell_dim[c] for c in cells)
