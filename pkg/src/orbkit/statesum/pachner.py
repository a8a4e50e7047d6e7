"""Oriented Pachner (bistellar) moves on branched triangulations.

A move removes a set of old top simplices and inserts new ones spanned by a
small alphabet of vertex symbols.  The new simplices take the vertex order
obtained by merging the local orders of the old ones (ties broken by vertex
rank, then by symbol), a new vertex is appended as the maximum, subsets that
already exist keep their cell ids and all others get fresh ids.  Signs are
transported through a shared boundary facet.

Moves: ``1-3``, ``2-2``, ``3-1`` in dimension 2 and ``1-4``, ``2-3``, ``3-2``,
``4-1`` in dimension 3.
"""
from __future__ import annotations

import random
from collections import Counter
from itertools import combinations

from ..errors import InvalidMove
from .complex import OrderedTriangulation, subsets

__all__ = ["apply_move", "candidates", "random_moves", "pachner_invariance", "MOVES"]

MOVES = {2: ("1-3", "2-2", "3-1"), 3: ("1-4", "2-3", "3-2", "4-1")}


def _merged_order(T, old, symbols):
    """Linear order on ``symbols`` extending every old simplex's local order."""
    before = {s: set() for s in symbols}
    rank = {}
    for t, loc in old:
        items = sorted(((s, i) for s, i in loc.items() if s in before), key=lambda kv: kv[1])
        for (s1, i1), (s2, i2) in combinations(items, 2):
            before[s2].add(s1)
        for s, i in loc.items():
            rank.setdefault(s, T.vertex_rank.get(T.cells[t][(i,)], 0))
    out = []
    left = list(symbols)
    while left:
        ready = [s for s in left if before[s] <= set(out)]
        if not ready:
            raise InvalidMove("old simplices induce a cyclic vertex order")
        s = min(ready, key=lambda x: (rank.get(x, float("inf")), symbols.index(x)))
        out.append(s)
        left.remove(s)
    return out


def _replace(T: OrderedTriangulation, old: list, new_simplices: list, symbols: list,
             new_vertex=None) -> OrderedTriangulation:
    """Swap the old simplices for the new ones.

    ``old`` lists ``(t, {symbol: local index})``; ``new_simplices`` lists
    symbol sets; ``new_vertex`` names a symbol that becomes a fresh maximal vertex.
    """
    d = T.dim
    order = _merged_order(T, old, [s for s in symbols if s != new_vertex])
    if new_vertex is not None:
        order.append(new_vertex)
    pos = {s: i for i, s in enumerate(order)}
    lookup = {}
    for t, loc in old:
        for k in range(1, d + 2):
            for combo in combinations(sorted(loc, key=lambda s: loc[s]), k):
                key = frozenset(combo)
                idx = tuple(sorted(loc[s] for s in combo))
                lookup.setdefault(key, T.cells[t][idx])
    next_id = max(T.cell_dim) + 1
    fresh = {}
    removed = {t for t, _ in old}
    new_cells = []
    for simp in new_simplices:
        verts = sorted(simp, key=pos.__getitem__)
        c = {}
        for S in subsets(d):
            key = frozenset(verts[i] for i in S)
            if key in lookup and len(S) < d + 1:
                c[S] = lookup[key]
            else:
                if key not in fresh or len(S) == d + 1:
                    fresh[key] = next_id
                    next_id += 1
                c[S] = fresh[key]
        new_cells.append((verts, c))
    signs = []
    for verts, c in new_cells:
        s = _transport_sign(T, old, verts, d)
        signs.append(s)
    keep = [t for t in range(T.n_simplices) if t not in removed]
    cells = [T.cells[t] for t in keep] + [c for _, c in new_cells]
    all_signs = [T.signs[t] for t in keep] + signs
    rank = dict(T.vertex_rank)
    if new_vertex is not None:
        vid = fresh[frozenset([new_vertex])]
        rank[vid] = max(rank.values()) + 1
    used = {x for c in cells for x in c.values()}
    rank = {v: r for v, r in rank.items() if v in used}
    try:
        return OrderedTriangulation(d, cells, all_signs, rank, name=T.name)
    except Exception as exc:  # orientation or closedness broken by an invalid configuration
        raise InvalidMove(f"move produced an inconsistent complex: {exc}") from exc


def _transport_sign(T, old, verts, d):
    """Sign of a new simplex from an old one sharing a facet (same symbols)."""
    for i in range(d + 1):
        facet = set(verts) - {verts[i]}
        for t, loc in old:
            if facet <= set(loc):
                (j,) = [loc[s] for s in loc if s not in facet]
                return T.signs[t] * (-1) ** (i + j)
    raise InvalidMove("new simplex shares no facet with the removed ones")


# ---------------------------------------------------------------------------
# candidate enumeration

def _loc(t, syms):
    return (t, {s: i for i, s in enumerate(syms)})


def _star(T, cid):
    occ = T.occurrences(cid)
    return occ, Counter(t for t, _ in occ)


def candidates(T: OrderedTriangulation, move: str) -> list:
    """Sites where ``move`` applies: top simplices, facets, edges or vertices."""
    d = T.dim
    if move in ("1-3", "1-4"):
        return list(range(T.n_simplices))
    if move in ("2-2", "2-3"):
        out = []
        for f, sl in sorted(T.facet_slots().items()):
            if len(sl) == 2 and sl[0][0] != sl[1][0]:
                out.append(f)
        return out
    if move == "3-2":
        return [e for e in T.cells_of_dim(1) if _orderable(T, _three_two_data(T, e))]
    if move in ("3-1", "4-1"):
        return [v for v in T.cells_of_dim(0) if _orderable(T, _collapse_data(T, v))]
    raise InvalidMove(f"unknown move {move!r} in dimension {d}")


def _orderable(T, data) -> bool:
    """The removed simplices exist and their local orders admit a common extension."""
    if data is None:
        return False
    try:
        # the collapsed centre "v" is not part of the new simplex
        _merged_order(T, data, sorted({s for _, loc in data for s in loc} - {"v"}))
    except InvalidMove:
        return False
    return True


def _facet_data(T, f):
    sl = T.facet_slots().get(f, [])
    if len(sl) != 2 or sl[0][0] == sl[1][0]:
        raise InvalidMove(f"cell {f} is not an interior facet between two distinct simplices")
    d = T.dim
    (t1, i1), (t2, i2) = sl
    face_syms = [f"f{k}" for k in range(d)]
    loc1 = {}
    loc2 = {}
    L1 = [j for j in range(d + 1) if j != i1]
    L2 = [j for j in range(d + 1) if j != i2]
    for k, s in enumerate(face_syms):
        loc1[s] = L1[k]
        loc2[s] = L2[k]
    loc1["p"] = i1
    loc2["q"] = i2
    return (t1, loc1), (t2, loc2), face_syms


def _three_two_data(T, e):
    occ, cnt = _star(T, e)
    if len(occ) != 3 or any(v != 1 for v in cnt.values()):
        return None
    olds = []
    tri_ids = Counter()
    for t, S in occ:
        others = [j for j in range(4) if j not in S]
        tris = [T.cells[t][tuple(sorted(S + (j,)))] for j in others]
        tri_ids.update(tris)
        olds.append((t, S, others, tris))
    if len(tri_ids) != 3 or any(v != 2 for v in tri_ids.values()):
        return None
    names = {tid: f"a{k}" for k, tid in enumerate(sorted(tri_ids))}
    result = []
    for t, S, others, tris in olds:
        loc = {"p": S[0], "q": S[1]}
        for j, tid in zip(others, tris):
            loc[names[tid]] = j
        result.append((t, loc))
    # each pair of link symbols must bound a face shared consistently
    for t, loc in result:
        if len(set(loc)) != 4:
            return None
    return result


def _collapse_data(T, v):
    """Star of a vertex in exactly ``dim + 1`` simplices forming a subdivided simplex."""
    d = T.dim
    occ, cnt = _star(T, v)
    if len(occ) != d + 1 or any(x != 1 for x in cnt.values()):
        return None
    edge_ids = Counter()
    rows = []
    for t, S in occ:
        (iv,) = S
        others = [j for j in range(d + 1) if j != iv]
        edges = [T.cells[t][tuple(sorted((iv, j)))] for j in others]
        edge_ids.update(edges)
        rows.append((t, iv, others, edges))
    if len(edge_ids) != d + 1 or any(x != d for x in edge_ids.values()):
        return None
    names = {eid: f"b{k}" for k, eid in enumerate(sorted(edge_ids))}
    result = []
    for t, iv, others, edges in rows:
        loc = {"v": iv}
        for j, eid in zip(others, edges):
            loc[names[eid]] = j
        if len(loc) != d + 1:
            return None
        result.append((t, loc))
    # the opposite faces must be distinct cells
    opp = [T.cells[t][tuple(sorted(i for s, i in loc.items() if s != "v"))] for t, loc in result]
    if len(set(opp)) != d + 1:
        return None
    return result


def apply_move(T: OrderedTriangulation, move: str, site) -> OrderedTriangulation:
    """Apply ``move`` at ``site`` (simplex index, facet id, edge id or vertex id)."""
    d = T.dim
    if move not in MOVES.get(d, ()):
        raise InvalidMove(f"move {move!r} is not available in dimension {d}")
    if move in ("1-3", "1-4"):
        if not 0 <= site < T.n_simplices:
            raise InvalidMove(f"no top simplex {site}")
        syms = [f"x{k}" for k in range(d + 1)]
        old = [_loc(site, syms)]
        new = [[s for s in syms if s != omit] + ["v"] for omit in syms]
        return _replace(T, old, new, syms + ["v"], new_vertex="v")
    if move in ("2-2", "2-3"):
        old1, old2, face = _facet_data(T, site)
        new = [[s for s in face if s != omit] + ["p", "q"] for omit in face]
        return _replace(T, [old1, old2], new, face + ["p", "q"])
    if move == "3-2":
        data = _three_two_data(T, site)
        if data is None:
            raise InvalidMove(f"edge {site} does not have a 3-2 configuration")
        link = ["a0", "a1", "a2"]
        return _replace(T, data, [link + ["p"], link + ["q"]], link + ["p", "q"])
    if move in ("3-1", "4-1"):
        data = _collapse_data(T, site)
        if data is None:
            raise InvalidMove(f"vertex {site} is not the centre of a subdivided simplex")
        outer = [f"b{k}" for k in range(d + 1)]
        return _replace(T, data, [outer], outer)
    raise InvalidMove(f"unknown move {move!r}")


def random_moves(T: OrderedTriangulation, count: int, seed: int = 0, max_growth: int = 6):
    """Apply ``count`` random admissible moves; yields ``(move, site, T)`` after each.

    Simplifying moves are preferred once the complex has grown by
    ``max_growth`` simplices, which keeps the sizes bounded.
    """
    rng = random.Random(seed)
    base = T.n_simplices
    cur = T
    up = {2: ("1-3", "2-2"), 3: ("1-4", "2-3")}[T.dim]
    down = {2: ("3-1", "2-2"), 3: ("4-1", "3-2")}[T.dim]
    for _ in range(count):
        if cur.n_simplices > base + max_growth:
            pool = rng.sample(down, len(down)) + rng.sample(up, len(up))
        else:
            pool = rng.sample(up + down, len(up + down))
        for mv in pool:
            sites = candidates(cur, mv)
            if sites:
                site = rng.choice(sites)
                cur = apply_move(cur, mv, site)
                yield mv, site, cur
                break
        else:
            raise InvalidMove("no admissible move found")


def pachner_invariance(T: OrderedTriangulation, evaluate, moves=None, count: int = 0, seed: int = 0):
    """Evaluate before and after each move; returns ``(ok, values, applied)``.

    ``moves`` lists explicit ``(move, site)`` pairs; otherwise ``count`` random
    moves are drawn with ``seed``.
    """
    ref = evaluate(T)
    values = [ref]
    applied = []
    if moves is not None:
        cur = T
        steps = []
        for mv, site in moves:
            cur = apply_move(cur, mv, site)
            steps.append((mv, site, cur))
    else:
        steps = random_moves(T, count, seed)
    for mv, site, cur in steps:
        applied.append((mv, site, cur.n_simplices))
        values.append(evaluate(cur))
    return all(v == ref for v in values), values, applied
