"""Regenerate the bundled fixtures in ``src/orbkit/data``."""
from __future__ import annotations

import json
import sys
from pathlib import Path

from orbkit.bimodules import regular_bimodule
from orbkit.ew import decompose, simple_module
from orbkit.frobenius import dual_numbers, euler_gamma, group_algebra, matrix_algebra, product_algebra, scalar_algebra
from orbkit.fusioncat import CYCategoryData, fibonacci, pointed_fusion, regular_module
from orbkit.rtdefects import bimodule_fixtures, graded_group_algebra, pair_fixtures, svec, toric_code, vec_z2
from orbkit.statesum import fixtures as fx
from orbkit.statesum.orbifold import StratifiedComplex

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/orbkit/data"


def write(name, data):
    (OUT / name).write_text(json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    algebras = {"q.json": scalar_algebra(1), "q_lambda3.json": scalar_algebra(3), "q_z2.json": group_algebra(2),
                "gamma_q_z2.json": euler_gamma(group_algebra(2)), "mat2.json": matrix_algebra(2),
                "gamma_mat2.json": euler_gamma(matrix_algebra(2)), "qxq.json": product_algebra([1, 1]),
                "dualnumbers.json": dual_numbers()}
    for name, fs in algebras.items():
        write(name, fs.to_json())

    write("vec_z2.json", pointed_fusion(2).to_json())
    write("vec_z3.json", pointed_fusion(3).to_json())
    write("fib.json", fibonacci().to_json())
    write("braided_vec_z2.json", vec_z2().to_json())
    write("svec.json", svec().to_json())
    write("toric_code.json", toric_code().to_json())
    write("cy_example.json", CYCategoryData(["1", "4", "1/9"]).to_json())
    write("module_fib_regular.json", regular_module(fibonacci()).to_json())
    write("module_vec_z2_regular.json", regular_module(pointed_fusion(2)).to_json())

    tris = {"s3_two_tet.json": fx.s3_two_tets(), "s3_boundary.json": fx.s3_boundary_4simplex(),
            "s2xs1.json": fx.s2_x_s1(), "t3.json": fx.t3(), "torus.json": fx.torus_one_vertex(),
            "torus7.json": fx.torus_seven_vertex(), "sphere.json": fx.tetrahedron_boundary(),
            "sphere2.json": fx.sphere_two_triangles(), "genus2.json": fx.genus_two(),
            "circle1.json": fx.circle(1), "circle3.json": fx.circle(3)}
    for name, T in tris.items():
        write(name, T.to_json())

    z2 = algebras["gamma_q_z2.json"]
    write("reg_gamma_q_z2.json", regular_bimodule(z2).to_json("gamma_q_z2.json", "gamma_q_z2.json"))
    m2 = algebras["mat2.json"]
    S = simple_module(m2, decompose(m2).generators[0])
    write("mat2_simple.json", S.to_json("mat2.json", "q.json"))

    refs = {id(z2): "gamma_q_z2.json"}
    ref = lambda obj: refs.get(id(obj)) or obj.to_json()  # noqa: E731
    S1 = StratifiedComplex.from_vertex_keys(fx.torus_grid(3, 3), lambda v: "B" if v[0] == 0 else "A",
                                            {"A": z2, "B": z2}, {("B", "A"): regular_bimodule(z2)},
                                            name="torus with identity defect")
    reg = regular_bimodule(z2)
    refs[id(reg)] = "reg_gamma_q_z2.json"
    S1.defect_labels = {k: reg for k in S1.defect_labels}
    write("defect_torus.json", S1.to_json(ref))
    fib = fibonacci()
    refs[id(fib)] = "fib.json"
    write("s3_fib_trivial.json", StratifiedComplex.trivial(fx.s3_two_tets(), fib, name="S3 trivial").to_json(ref))

    v2, sv = vec_z2(), svec()
    write("comm_frob_vec_z2.json", graded_group_algebra(v2, [0, 1], name="1+g").to_json("braided_vec_z2.json"))
    write("comm_frob_svec.json", graded_group_algebra(sv, [0, 1], name="1+psi").to_json("svec.json"))
    pairs = {P.name: P for P, _ in pair_fixtures()}
    write("pair_toric_m_e.json", pairs["toric: Z2xZ2 over (1+m, 1+e)"].to_json())
    write("pair_toric_e_e.json", pairs["toric: Z2xZ2 over (1+e, 1+e)"].to_json())
    write("pair_vec_z2_regular.json", pairs["Vec_Z2: A regular over (A, A)"].to_json())
    bims = {X.name: X for X, _ in bimodule_fixtures()}
    write("pair_bimodule_toric_regular.json", bims["toric: Z2xZ2 over (1+m, 1+e) regular"].to_json())
    write("pair_bimodule_toric_inverse_braiding.json", bims["toric regular, inverse braiding"].to_json())


if __name__ == "__main__":
    main()
