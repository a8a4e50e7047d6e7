"""State spaces as images of cylinder idempotents.

For a closed ``(d-1)``-dimensional triangulation ``S`` the prism ``S x [0, 1]``
is evaluated with its boundary variables left open, giving a matrix ``P`` from
bottom to top configurations.  Gluing two cylinders inserts the boundary
weight ``W`` once, so ``Q = P W`` is the cylinder operator; it is idempotent
and its rank is the dimension of the state space.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import linalg as la
from ..bimodules import delta_separable_form
from ..errors import MissingEulerDatum, NotClosed, ShapeError
from ..frobenius import FrobeniusStructure
from ..fusioncat import FusionData
from .complex import OrderedTriangulation
from .contract import ContractionStats, contract
from .fhk import fhk_factors
from .tv import tv_factors

__all__ = ["CylinderOperator", "cylinder_operator", "state_space_dim"]


@dataclass
class CylinderOperator:
    Q: np.ndarray
    rows: list = field(default_factory=list)  # boundary configurations indexing rows and columns
    stats: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return la.rank(self.Q)

    def is_idempotent(self) -> bool:
        return la.array_equal(self.Q @ self.Q, self.Q)


def cylinder_operator(S: OrderedTriangulation, data) -> CylinderOperator:
    """``Q = P W`` for ``S x [0, 1]``; ``data`` is a Frobenius algebra (2d) or fusion data (3d)."""
    if not S.is_closed:
        raise NotClosed(f"{S!r} is not closed")
    prism, level = S.product_interval()
    stats = ContractionStats()
    if isinstance(data, FusionData):
        return _cylinder_3d(S, prism, level, data, stats)
    if isinstance(data, FrobeniusStructure):
        return _cylinder_2d(S, prism, level, data, stats)
    raise TypeError("state spaces need a Frobenius algebra or fusion data")


def _cylinder_2d(S, prism, level, fs, stats):
    if S.dim != 1:
        raise ShapeError("a 2d theory needs a 1-dimensional boundary")
    ds = delta_separable_form(fs)
    K = ds.F
    bottom = [level[(e, 0)] for e in S.cells_of_dim(1)]
    top = [level[(e, 1)] for e in S.cells_of_dim(1)]
    facs, edge_slots = fhk_factors(prism, ds, skip_edges=bottom + top)
    v_in = [edge_slots[e][0] for e in bottom]
    v_out = [edge_slots[e][0] for e in top]
    res = contract(facs, keep=v_in + v_out, zero=K(0), stats=stats)
    # the cylinder has Euler characteristic 0, so no psi insertion is needed
    n = ds.n
    configs = [tuple(c) for c in np.ndindex(*(n,) * len(v_in))]
    index = {c: i for i, c in enumerate(configs)}
    P = la.zeros((len(configs), len(configs)), K)
    for k, v in res.table.items():
        P[index[k[len(v_in):]], index[k[:len(v_in)]]] = v
    # gluing a top slot to the next bottom slot inserts the copairing of that edge
    W = la.eye(1, K)
    for _ in v_in:
        W = la.kron(W, ds.copairing)
    # orientation convention: P maps bottom to top, W pairs top slots with bottom slots
    return CylinderOperator(P @ W.T, configs, stats.as_dict())


def _cylinder_3d(S, prism, level, C, stats):
    if S.dim != 2:
        raise ShapeError("a 3d theory needs a 2-dimensional boundary")
    if C.phi_sq is None:
        raise MissingEulerDatum(f"{C!r} carries no Euler datum phi")
    K = C.field
    edges = S.cells_of_dim(1)
    bottom = [level[(e, 0)] for e in edges]
    top = [level[(e, 1)] for e in edges]
    faces_b = [level[(f, 0)] for f in S.cells_of_dim(2)]
    faces_t = [level[(f, 1)] for f in S.cells_of_dim(2)]
    facs = tv_factors(prism, C, open_edges=bottom + top + faces_b + faces_t)
    keep = [("e", e) for e in bottom] + [("e", e) for e in top]
    res = contract(facs, keep=keep, zero=K(0), stats=stats)
    interior_vertices = prism.count(0) - 2 * S.count(0)
    scale = C.phi_sq ** interior_vertices
    n_in = len(bottom)
    configs = sorted({k[:n_in] for k in res.table} | {k[n_in:] for k in res.table})
    index = {c: i for i, c in enumerate(configs)}
    P = la.zeros((len(configs), len(configs)), K)
    for k, v in res.table.items():
        P[index[k[n_in:]], index[k[:n_in]]] = v * scale
    # boundary weight of one copy of S: edges, faces (long edge) and vertices
    first = S.first_occurrence()
    W = la.zeros((len(configs), len(configs)), K)
    for i, c in enumerate(configs):
        lab = dict(zip(edges, c))
        w = C.phi_sq ** S.count(0)
        for e in edges:
            w = w * C.qdim[lab[e]]
        for f in S.cells_of_dim(2):
            t, Sf = first[f]
            w = w / C.qdim[lab[S.cells[t][(Sf[0], Sf[-1])]]]
        W[i, i] = w
    return CylinderOperator(P @ W, configs, stats.as_dict())


def state_space_dim(S: OrderedTriangulation, data, check: bool = True) -> int:
    """Rank of the cylinder idempotent over ``S`` (raises if it is not idempotent)."""
    op = cylinder_operator(S, data)
    if check and not op.is_idempotent():
        raise ArithmeticError("cylinder operator is not idempotent")
    return op.rank
