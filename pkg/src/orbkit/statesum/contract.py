"""Sparse exact tensor contraction by variable elimination.

A factor is a scope (tuple of variable names) and a dict from value tuples to
field elements; absent entries are zero.  Variables are summed out one at a
time, always picking the one whose elimination creates the smallest scope
(ties broken by first appearance), so results are deterministic.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

__all__ = ["Factor", "factor_from_slots", "contract", "ContractionStats"]


@dataclass
class Factor:
    scope: tuple
    table: dict

    def __mul__(self, other: Factor) -> Factor:
        shared = [v for v in other.scope if v in self.scope]
        extra = [v for v in other.scope if v not in self.scope]
        pos_self = [self.scope.index(v) for v in shared]
        pos_other = [other.scope.index(v) for v in shared]
        pos_extra = [other.scope.index(v) for v in extra]
        index = defaultdict(list)
        for key, val in other.table.items():
            index[tuple(key[p] for p in pos_other)].append((tuple(key[p] for p in pos_extra), val))
        out = {}
        for key, val in self.table.items():
            for ext, v2 in index.get(tuple(key[p] for p in pos_self), ()):
                k = key + ext
                out[k] = out[k] + val * v2 if k in out else val * v2
        return Factor(self.scope + tuple(extra), out)

    def sum_out(self, var) -> Factor:
        p = self.scope.index(var)
        out = {}
        for key, val in self.table.items():
            k = key[:p] + key[p + 1:]
            out[k] = out[k] + val if k in out else val
        return Factor(self.scope[:p] + self.scope[p + 1:], {k: v for k, v in out.items() if v})

    def reorder(self, scope) -> Factor:
        perm = [self.scope.index(v) for v in scope]
        return Factor(tuple(scope), {tuple(k[p] for p in perm): v for k, v in self.table.items()})


def factor_from_slots(slots, entries) -> Factor:
    """Factor whose slots may repeat a variable: entries disagreeing on a repeat are dropped."""
    scope = []
    for v in slots:
        if v not in scope:
            scope.append(v)
    pos = [scope.index(v) for v in slots]
    table = {}
    for key, val in entries:
        vals = [None] * len(scope)
        ok = True
        for p, x in zip(pos, key):
            if vals[p] is None:
                vals[p] = x
            elif vals[p] != x:
                ok = False
                break
        if ok and val:
            k = tuple(vals)
            table[k] = table[k] + val if k in table else val
    return Factor(tuple(scope), table)


@dataclass
class ContractionStats:
    factors: int = 0
    variables: int = 0
    terms: int = 0
    max_scope: int = 0

    def as_dict(self) -> dict:
        return {"factors": self.factors, "variables": self.variables, "terms": self.terms,
                "max_scope": self.max_scope}


def contract(factors: list, keep=(), zero=0, stats: ContractionStats | None = None) -> Factor:
    """Multiply all factors and sum out every variable not in ``keep``.

    Returns a factor over ``keep`` (in that order); with ``keep`` empty the
    table has at most the single key ``()``.
    """
    stats = stats if stats is not None else ContractionStats()
    facs = [f for f in factors]
    stats.factors += len(facs)
    keep = tuple(keep)
    order = []
    for f in facs:
        for v in f.scope:
            if v not in order:
                order.append(v)
    rank = {v: i for i, v in enumerate(order)}
    todo = [v for v in order if v not in keep]
    stats.variables += len(todo)
    while todo:
        best, best_cost = None, None
        for v in todo:
            sc = set()
            for f in facs:
                if v in f.scope:
                    sc.update(f.scope)
            cost = (len(sc), rank[v])
            if best_cost is None or cost < best_cost:
                best, best_cost = v, cost
        v = best
        todo.remove(v)
        involved = [f for f in facs if v in f.scope]
        facs = [f for f in facs if v not in f.scope]
        prod = involved[0]
        for f in involved[1:]:
            prod = prod * f
            stats.terms += len(prod.table)
        stats.max_scope = max(stats.max_scope, len(prod.scope))
        facs.append(prod.sum_out(v))
    result = Factor((), {(): 1})
    for f in facs:
        result = result * f
    stats.terms += len(result.table)
    missing = [v for v in keep if v not in result.scope]
    if missing:
        raise ValueError(f"kept variables {missing} do not occur in any factor")
    result = result.reorder(keep)
    result.table = {k: zero + v for k, v in result.table.items()}
    if not result.table and not keep:
        result.table = {(): zero}
    return result
