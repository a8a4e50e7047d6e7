"""Shipped triangulations of closed surfaces and 3-manifolds."""
from __future__ import annotations

from itertools import combinations

from .complex import OrderedTriangulation

__all__ = ["circle", "sphere_two_triangles", "tetrahedron_boundary", "torus_grid", "torus_one_vertex",
           "torus_seven_vertex", "genus_two", "surface_of_genus", "s3_two_tets", "s3_boundary_4simplex",
           "s2_x_s1", "t3", "TRIANGULATIONS"]


def circle(n: int = 1) -> OrderedTriangulation:
    """The circle with ``n`` vertices."""
    return OrderedTriangulation.periodic([[(i,), (i + 1,)] for i in range(n)], (n,), name=f"circle{n}")


def sphere_two_triangles() -> OrderedTriangulation:
    return OrderedTriangulation.from_simplices([(0, 1, 2), (0, 1, 2)], name="S2_two_triangles")


def tetrahedron_boundary() -> OrderedTriangulation:
    return OrderedTriangulation.from_simplices(list(combinations(range(4), 3)), name="S2_tetrahedron")


def torus_grid(m: int, n: int) -> OrderedTriangulation:
    """Periodic ``m x n`` grid, each square cut along its main diagonal."""
    simps = []
    for i in range(m):
        for j in range(n):
            simps.append([(i, j), (i + 1, j), (i + 1, j + 1)])
            simps.append([(i, j), (i, j + 1), (i + 1, j + 1)])
    return OrderedTriangulation.periodic(simps, (m, n), name=f"T2_grid{m}x{n}")


def torus_one_vertex() -> OrderedTriangulation:
    T = torus_grid(1, 1)
    T.name = "T2_one_vertex"
    return T


def _seven_vertex_triangles():
    out = []
    for i in range(7):
        out.append((i, (i + 1) % 7, (i + 3) % 7))
        out.append((i, (i + 2) % 7, (i + 3) % 7))
    return out


def torus_seven_vertex() -> OrderedTriangulation:
    """The minimal simplicial torus on seven vertices."""
    return OrderedTriangulation.from_simplices(_seven_vertex_triangles(), name="T2_seven_vertex")


def genus_two() -> OrderedTriangulation:
    """Connected sum of two seven-vertex tori along the triangle ``(0, 1, 3)``."""
    tris = _seven_vertex_triangles()
    cut = (0, 1, 3)
    first = [t for t in tris if tuple(sorted(t)) != cut]
    relabel = {v: (v if v in cut else v + 5) for v in range(7)}
    second = [tuple(relabel[v] for v in t) for t in tris if tuple(sorted(t)) != cut]
    return OrderedTriangulation.from_simplices(first + second, name="genus2")


def surface_of_genus(g: int) -> OrderedTriangulation:
    if g == 0:
        return tetrahedron_boundary()
    if g == 1:
        return torus_seven_vertex()
    if g == 2:
        return genus_two()
    raise ValueError("surfaces of genus 0, 1, 2 are shipped")


def s3_two_tets() -> OrderedTriangulation:
    return OrderedTriangulation.from_simplices([(0, 1, 2, 3), (0, 1, 2, 3)], name="S3_two_tets")


def s3_boundary_4simplex() -> OrderedTriangulation:
    return OrderedTriangulation.from_simplices(list(combinations(range(5), 4)), name="S3_boundary_4simplex")


def s2_x_s1(base: OrderedTriangulation | None = None) -> OrderedTriangulation:
    base = base or sphere_two_triangles()
    out, _ = base.product_interval(closed=True, name=f"{base.name}xS1")
    return out


def t3(base: OrderedTriangulation | None = None) -> OrderedTriangulation:
    base = base or torus_one_vertex()
    out, _ = base.product_interval(closed=True, name=f"{base.name}xS1")
    return out


TRIANGULATIONS = {
    "circle1": lambda: circle(1),
    "circle3": lambda: circle(3),
    "s2_two_triangles": sphere_two_triangles,
    "s2_tetrahedron": tetrahedron_boundary,
    "t2_one_vertex": torus_one_vertex,
    "t2_grid2x1": lambda: torus_grid(2, 1),
    "t2_seven_vertex": torus_seven_vertex,
    "genus2": genus_two,
    "s3_two_tets": s3_two_tets,
    "s3_boundary_4simplex": s3_boundary_4simplex,
    "s2xs1": s2_x_s1,
    "t3": t3,
}
