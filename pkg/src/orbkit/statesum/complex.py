"""Ordered (branched) triangulations as Delta-complexes.

Every top simplex has local vertices ``0..dim`` in increasing order and a map
from each nonempty local subset (a sorted index tuple) to a global cell id.
Face identifications preserve the local order, so every edge carries a
direction and every simplex a total order on its vertices.  For complexes
built from vertex tuples this is the total order on vertex labels; for
one-vertex complexes it is the branching induced by the gluings.

Orientation signs ``s_t`` make the facet ``i`` of simplex ``t`` carry the
induced sign ``s_t (-1)^i``; the two sides of an interior facet must disagree.
"""
from __future__ import annotations

from collections import defaultdict, deque
from itertools import combinations

from ..errors import NotClosed, NotOrientable, SchemaVersionMismatch, ShapeError

__all__ = ["OrderedTriangulation", "subsets"]

SCHEMA_VERSION = 1


def subsets(dim: int):
    """All nonempty sorted subsets of ``range(dim + 1)``."""
    pts = range(dim + 1)
    return [S for k in range(1, dim + 2) for S in combinations(pts, k)]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


class OrderedTriangulation:
    """A branched Delta-complex of dimension ``dim`` with orientation signs."""

    def __init__(self, dim: int, cells: list, signs=None, vertex_rank=None, name: str | None = None,
                 keys: dict | None = None, vertex_labels: list | None = None):
        self.dim = dim
        self.cells = [dict(c) for c in cells]
        self.name = name
        self.keys = keys or {}
        self.vertex_labels = vertex_labels
        self.cell_dim = {}
        for c in self.cells:
            if len(c) != 2 ** (dim + 1) - 1:
                raise ShapeError("each top simplex needs a cell id for every nonempty subset")
            for S, cid in c.items():
                k = len(S) - 1
                if self.cell_dim.setdefault(cid, k) != k:
                    raise ShapeError(f"cell {cid} used with two different dimensions")
        verts = self.cells_of_dim(0)
        if vertex_rank is None:
            vertex_rank = {v: i for i, v in enumerate(verts)}
        self.vertex_rank = dict(vertex_rank)
        if signs is None:
            self.signs = self._orientation()
        else:
            self.signs = [int(s) for s in signs]
            self.check_orientation()

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"OrderedTriangulation{tag}(dim={self.dim}, simplices={self.n_simplices})"

    # -- basic queries -----------------------------------------------------
    @property
    def n_simplices(self) -> int:
        return len(self.cells)

    def cells_of_dim(self, k: int) -> list:
        return sorted(c for c, d in self.cell_dim.items() if d == k)

    def count(self, k: int) -> int:
        return sum(1 for d in self.cell_dim.values() if d == k)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.count(k) for k in range(self.dim + 1))

    def facet(self, t: int, i: int) -> int:
        return self.cells[t][tuple(j for j in range(self.dim + 1) if j != i)]

    def facet_slots(self) -> dict:
        slots = defaultdict(list)
        for t in range(self.n_simplices):
            for i in range(self.dim + 1):
                slots[self.facet(t, i)].append((t, i))
        return slots

    def boundary_facets(self) -> list:
        return sorted(f for f, s in self.facet_slots().items() if len(s) == 1)

    @property
    def is_closed(self) -> bool:
        return not self.boundary_facets()

    def require_closed(self):
        bad = self.boundary_facets()
        if bad:
            raise NotClosed(f"{self!r} has {len(bad)} boundary facets")

    def occurrences(self, cid: int) -> list:
        """``(t, S)`` pairs where cell ``cid`` appears."""
        return [(t, S) for t, c in enumerate(self.cells) for S, x in c.items() if x == cid]

    def first_occurrence(self) -> dict:
        out = {}
        for t, c in enumerate(self.cells):
            for S, x in c.items():
                out.setdefault(x, (t, S))
        return out

    def components(self) -> list:
        """Top simplices grouped into connected components (sharing any cell)."""
        uf = _UnionFind()
        owner = {}
        for t, c in enumerate(self.cells):
            uf.find(t)
            for x in c.values():
                if x in owner:
                    uf.union(owner[x], t)
                else:
                    owner[x] = t
        groups = defaultdict(list)
        for t in range(self.n_simplices):
            groups[uf.find(t)].append(t)
        return [groups[r] for r in sorted(groups)]

    # -- orientation -------------------------------------------------------
    def _orientation(self) -> list:
        slots = self.facet_slots()
        for f, s in slots.items():
            if len(s) > 2:
                raise NotClosed(f"facet {f} is shared by {len(s)} top simplices")
        signs = [0] * self.n_simplices
        for start in range(self.n_simplices):
            if signs[start]:
                continue
            signs[start] = 1
            queue = deque([start])
            while queue:
                t = queue.popleft()
                for i in range(self.dim + 1):
                    for u, j in slots[self.facet(t, i)]:
                        if (u, j) == (t, i):
                            continue
                        want = -signs[t] * (-1) ** (i + j)
                        if not signs[u]:
                            signs[u] = want
                            queue.append(u)
                        elif signs[u] != want:
                            raise NotOrientable(f"orientation conflict across facet {self.facet(t, i)}")
        return signs

    def check_orientation(self):
        if len(self.signs) != self.n_simplices or any(s not in (1, -1) for s in self.signs):
            raise ShapeError("one sign in {+1, -1} per top simplex is required")
        for f, s in self.facet_slots().items():
            if len(s) > 2:
                raise NotClosed(f"facet {f} is shared by {len(s)} top simplices")
            if len(s) == 2:
                (t, i), (u, j) = s
                if self.signs[t] * (-1) ** i != -self.signs[u] * (-1) ** j:
                    raise NotOrientable(f"facet {f} receives equal induced orientations")

    def with_signs(self, signs) -> OrderedTriangulation:
        return OrderedTriangulation(self.dim, self.cells, signs, self.vertex_rank, self.name, self.keys,
                                    self.vertex_labels)

    def reversed(self) -> OrderedTriangulation:
        return self.with_signs([-s for s in self.signs])

    # -- constructions -----------------------------------------------------
    @classmethod
    def from_keys(cls, dim: int, key_fns, signs=None, name=None, vertex_labels=None) -> OrderedTriangulation:
        """Build from per-simplex key functions ``S -> hashable``; equal keys are one cell."""
        top = tuple(range(dim + 1))
        # top simplices are never identified, even when their vertex tuples agree
        raw = [{S: (fn(S) if S != top else ("top", t)) for S in subsets(dim)} for t, fn in enumerate(key_fns)]
        found = {}
        for c in raw:
            for S, key in c.items():
                found.setdefault((len(S), key), None)
        try:
            ordered = sorted(found)
        except TypeError:
            ordered = list(found)
        ids = {k: i for i, k in enumerate(ordered)}
        cells = [{S: ids[(len(S), key)] for S, key in c.items()} for c in raw]
        keys = {key: ids[(n, key)] for (n, key) in ordered}
        return cls(dim, cells, signs, name=name, keys=keys, vertex_labels=vertex_labels)

    @classmethod
    def from_simplices(cls, simplices, signs=None, name=None) -> OrderedTriangulation:
        """Simplicial input: vertex tuples, sorted into the total order of labels."""
        simps = [tuple(sorted(s)) for s in simplices]
        dim = len(simps[0]) - 1
        for s in simps:
            if len(s) != dim + 1 or len(set(s)) != dim + 1:
                raise ShapeError(f"simplex {s} does not have {dim + 1} distinct vertices")
        fns = [(lambda S, s=s: tuple(s[i] for i in S)) for s in simps]
        return cls.from_keys(dim, fns, signs, name=name, vertex_labels=[list(s) for s in simps])

    @classmethod
    def from_gluings(cls, dim: int, n_simplices: int, gluings, vertex_ids=None, signs=None,
                     name=None) -> OrderedTriangulation:
        """Order-preserving facet gluings ``[t1, i1, t2, i2]`` (facet ``i`` omits vertex ``i``).

        ``vertex_ids`` optionally lists global vertex labels per simplex; equal
        labels are identified in addition to the gluings.
        """
        uf = _UnionFind()
        for t in range(n_simplices):
            for S in subsets(dim):
                uf.find((t, S))
        for t1, i1, t2, i2 in gluings:
            L1 = [j for j in range(dim + 1) if j != i1]
            L2 = [j for j in range(dim + 1) if j != i2]
            for P in subsets(dim - 1):
                uf.union((t1, tuple(L1[p] for p in P)), (t2, tuple(L2[p] for p in P)))
        if vertex_ids is not None:
            first = {}
            for t, vs in enumerate(vertex_ids):
                for j, v in enumerate(vs):
                    if v in first:
                        uf.union(first[v], (t, (j,)))
                    else:
                        first[v] = (t, (j,))
            # vertices keep the order of their given labels so serialisation is stable
            label = {}
            for t, vs in enumerate(vertex_ids):
                for j, v in enumerate(vs):
                    root = uf.find((t, (j,)))
                    label[root] = min(label.get(root, v), v)
            fns = [(lambda S, t=t: ("v", label[uf.find((t, S))]) if len(S) == 1 else uf.find((t, S)))
                   for t in range(n_simplices)]
            return cls.from_keys(dim, fns, signs, name=name)
        fns = [(lambda S, t=t: uf.find((t, S))) for t in range(n_simplices)]
        return cls.from_keys(dim, fns, signs, name=name)

    @classmethod
    def periodic(cls, simplices, periods, name=None) -> OrderedTriangulation:
        """Simplices with integer lattice points, identified modulo ``periods``.

        A subset's key is its first point reduced mod the periods together with
        the displacements of the remaining points, so small periods still give
        a valid Delta-complex.
        """
        def key_fn(pts):
            def fn(S):
                p0 = pts[S[0]]
                base = tuple(x % m for x, m in zip(p0, periods))
                disp = tuple(tuple(a - b for a, b in zip(pts[i], p0)) for i in S[1:])
                return (base, disp)
            return fn
        simps = [[tuple(p) for p in s] for s in simplices]
        dim = len(simps[0]) - 1
        return cls.from_keys(dim, [key_fn(s) for s in simps], name=name)

    def product_interval(self, closed: bool = False, name=None):
        """``self x [0, 1]`` (or ``x S^1`` when ``closed``) by the staircase subdivision.

        Returns ``(prism, level)`` with ``level[(cell, l)]`` the id of the copy of
        ``cell`` at level ``l``; for the closed product both levels coincide.
        """
        d = self.dim
        fns = []
        for t, c in enumerate(self.cells):
            for k in range(d + 1):
                verts = [(j, 0) for j in range(k + 1)] + [(j, 1) for j in range(k, d + 1)]
                fns.append(self._prism_key(c, verts, closed))
        out = OrderedTriangulation.from_keys(d + 1, fns, name=name)
        level = {}
        for c in self.cells:
            for S, cid in c.items():
                for lv in (0, 1):
                    lv_eff = 0 if closed else lv
                    key = (cid, tuple((p, lv_eff) for p in range(len(S))))
                    level[(cid, lv)] = out.keys[key]
        return out, level

    @staticmethod
    def _prism_key(c, verts, closed):
        def fn(S):
            pts = [verts[i] for i in S]
            if closed and all(lv == 1 for _, lv in pts):
                pts = [(j, 0) for j, _ in pts]
            J = sorted({j for j, _ in pts})
            return (c[tuple(J)], tuple((J.index(j), lv) for j, lv in pts))
        return fn

    def disjoint_union(self, other: OrderedTriangulation) -> OrderedTriangulation:
        if other.dim != self.dim:
            raise ValueError("dimensions differ")
        shift = max(self.cell_dim) + 1
        cells = self.cells + [{S: x + shift for S, x in c.items()} for c in other.cells]
        rank = dict(self.vertex_rank)
        top = max(rank.values()) + 1
        rank.update({v + shift: r + top for v, r in other.vertex_rank.items()})
        return OrderedTriangulation(self.dim, cells, self.signs + other.signs, rank,
                                    name=f"{self.name}+{other.name}")

    def relabeled(self, perm: dict) -> OrderedTriangulation:
        """Rebuild a simplicial complex after renaming its vertices (changes the total order)."""
        if self.vertex_labels is None:
            raise ValueError("relabeling needs a complex built from vertex tuples")
        simps = [[perm[v] for v in s] for s in self.vertex_labels]
        return OrderedTriangulation.from_simplices(simps, name=f"{self.name}'")

    # -- serialisation -----------------------------------------------------
    def to_json(self) -> dict:
        d = self.dim
        vids = [[c[(j,)] for j in range(d + 1)] for c in self.cells]
        slots = self.facet_slots()
        glue = sorted([list(s[0]) + list(s[1]) for s in slots.values() if len(s) == 2])
        return {"kind": "triangulation", "schema_version": SCHEMA_VERSION, "name": self.name, "dim": d,
                "vertices": self.count(0), "simplices": vids, "gluings": glue, "signs": list(self.signs)}

    @classmethod
    def from_json(cls, data: dict) -> OrderedTriangulation:
        ver = data.get("schema_version", SCHEMA_VERSION)
        if ver != SCHEMA_VERSION:
            raise SchemaVersionMismatch(f"triangulation schema {ver}, expected {SCHEMA_VERSION}")
        simps = data["simplices"]
        signs = data.get("signs")
        if data.get("gluings") is None:
            return cls.from_simplices(simps, signs, name=data.get("name"))
        dim = int(data["dim"])
        return cls.from_gluings(dim, len(simps), data["gluings"], vertex_ids=simps, signs=signs,
                                name=data.get("name"))
