import json
from fractions import Fraction

import pytest
import sympy
from oracles import dijkgraaf_witten, fibonacci_s3, hom_count, lattice_tft_blocks, sphere_defect_circle

from orbkit.bimodules import Bimodule, regular_bimodule
from orbkit.errors import (
    InvalidMove,
    LabelAdjacencyViolation,
    MissingEulerDatum,
    NotClosed,
    SchemaVersionMismatch,
    TransversalityViolation,
)
from orbkit.frobenius import (
    FrobeniusStructure,
    euler_gamma,
    group_algebra,
    matrix_algebra,
    product_algebra,
    scalar_algebra,
)
from orbkit.fusioncat import FusionData, fibonacci, pointed_fusion
from orbkit.scalars import Field
from orbkit.statesum import (
    HOST_POLICIES,
    OrderedTriangulation,
    StratifiedComplex,
    apply_move,
    candidates,
    cylinder_operator,
    fhk_evaluate,
    orbifold_evaluate,
    pachner_invariance,
    random_moves,
    state_space_dim,
    tv_evaluate,
)
from orbkit.statesum import fixtures as fx
from orbkit.suite import bimodule_zoo

QQ = Field(1)
SURFACES = [(fx.tetrahedron_boundary, 2), (fx.sphere_two_triangles, 2), (fx.torus_one_vertex, 0),
            (fx.torus_seven_vertex, 0), (lambda: fx.torus_grid(2, 3), 0), (fx.genus_two, -2)]


def sym(x):
    return sympy.sympify(str(x))


# triangulations

@pytest.mark.parametrize("make,chi", SURFACES)
def test_surface_fixtures(make, chi):
    T = make()
    assert T.is_closed and T.euler_characteristic == chi
    T.check_orientation()


def test_three_manifold_fixtures_have_zero_euler_characteristic():
    for T in [fx.s3_two_tets(), fx.s3_boundary_4simplex(), fx.s2_x_s1(), fx.t3()]:
        assert T.is_closed and T.euler_characteristic == 0


def test_open_complex_rejected():
    disc = OrderedTriangulation.from_simplices([[0, 1, 2]])
    assert not disc.is_closed
    with pytest.raises(NotClosed):
        fhk_evaluate(disc, group_algebra(2))
    with pytest.raises(NotClosed):
        orbifold_evaluate(StratifiedComplex.trivial(disc, group_algebra(2)))


def test_triangulation_json_round_trip():
    for T in [fx.torus_one_vertex(), fx.genus_two(), fx.s3_two_tets(), fx.t3()]:
        text = json.dumps(T.to_json(), sort_keys=True)
        back = OrderedTriangulation.from_json(json.loads(text))
        assert json.dumps(back.to_json(), sort_keys=True) == text
    data = fx.circle(3).to_json()
    data["schema_version"] = 2
    with pytest.raises(SchemaVersionMismatch):
        OrderedTriangulation.from_json(data)


# two-dimensional lattice sums

@pytest.mark.parametrize("lam", [Fraction(3), Fraction(-2, 7), Fraction(5, 4)])
@pytest.mark.parametrize("make,chi", SURFACES)
def test_scalar_invariant(lam, make, chi):
    assert fhk_evaluate(make(), scalar_algebra(lam)).value == QQ(lam) ** (-chi)


@pytest.mark.parametrize("fs,blocks", [
    (group_algebra(2), [(1, Fraction(1, 2)), (1, Fraction(1, 2))]),
    # the recorded psi compensates the rescaled counit, so the theory is unchanged
    (euler_gamma(group_algebra(2)), [(1, Fraction(1, 2)), (1, Fraction(1, 2))]),
    (matrix_algebra(2), [(2, 1)]),
    (matrix_algebra(2, scale=3), [(2, 3)]),
    (product_algebra([2, Fraction(1, 3)]), [(1, 2), (1, Fraction(1, 3))]),
], ids=["Q[Z2]", "Gamma(Q[Z2])", "Mat2", "Mat2 scaled", "QxQ"])
@pytest.mark.parametrize("make,chi", SURFACES)
def test_fhk_against_block_formula(fs, blocks, make, chi):
    assert sym(fhk_evaluate(make(), fs).value) == lattice_tft_blocks(blocks, chi)


def test_torus_value_is_centre_dimension():
    assert fhk_evaluate(fx.torus_one_vertex(), euler_gamma(group_algebra(2))).value == 2
    assert fhk_evaluate(fx.torus_seven_vertex(), euler_gamma(group_algebra(2))).value == 2


def test_disjoint_union_is_multiplicative():
    fs = matrix_algebra(2, scale=3)
    A, B = fx.tetrahedron_boundary(), fx.genus_two()
    assert fhk_evaluate(A.disjoint_union(B), fs).value == fhk_evaluate(A, fs).value * fhk_evaluate(B, fs).value
    C = fibonacci()
    S, R = fx.s3_two_tets(), fx.s2_x_s1()
    assert tv_evaluate(S.disjoint_union(R), C).value == tv_evaluate(S, C).value * tv_evaluate(R, C).value


def test_vertex_reordering_invariance():
    fs = product_algebra([2, 5])
    T = fx.torus_seven_vertex()
    perm = {v: (3 * v + 1) % 7 for v in range(7)}
    assert fhk_evaluate(T.relabeled(perm), fs).value == fhk_evaluate(T, fs).value
    S = fx.s3_boundary_4simplex()
    perm = {0: 3, 1: 0, 2: 4, 3: 1, 4: 2}
    for C in [pointed_fusion(2), fibonacci()]:
        assert tv_evaluate(S.relabeled(perm), C).value == tv_evaluate(S, C).value


def test_orientation_reversal():
    fs = group_algebra(2)
    T = fx.genus_two()
    assert fhk_evaluate(T.reversed(), fs).value == fhk_evaluate(T, fs).value
    assert tv_evaluate(fx.s3_two_tets().reversed(), fibonacci()).value == fibonacci_s3()


# Turaev-Viro

@pytest.mark.parametrize("make", [fx.s3_two_tets, fx.s3_boundary_4simplex, fx.s2_x_s1, fx.t3])
@pytest.mark.parametrize("n", [2, 3])
def test_tv_matches_dijkgraaf_witten(make, n):
    T = make()
    assert sym(tv_evaluate(T, pointed_fusion(n)).value) == dijkgraaf_witten(T, n)


def test_tv_fibonacci_sphere():
    for T in [fx.s3_two_tets(), fx.s3_boundary_4simplex()]:
        v = tv_evaluate(T, fibonacci()).value
        assert v == fibonacci_s3()
        assert str(v) == "1/2-1/10*sqrt(5)"


def test_tv_requires_euler_datum():
    C = pointed_fusion(2)
    bare = FusionData(C.labels, C.dual, C.N, C.F, C.qdim)
    with pytest.raises(MissingEulerDatum):
        tv_evaluate(fx.s3_two_tets(), bare)
    with pytest.raises(MissingEulerDatum):
        state_space_dim(fx.torus_one_vertex(), bare)


# Pachner moves

def test_torus_one_three_move():
    T = fx.torus_one_vertex()
    site = candidates(T, "1-3")[0]
    ok, values, applied = pachner_invariance(T, lambda X: fhk_evaluate(X, group_algebra(2)).value,
                                             moves=[("1-3", site)])
    assert ok and applied[0][2] == T.n_simplices + 2


def test_sphere_two_three_move_fibonacci():
    T = fx.s3_two_tets()
    site = candidates(T, "2-3")[0]
    ok, values, _ = pachner_invariance(T, lambda X: tv_evaluate(X, fibonacci()).value, moves=[("2-3", site)])
    assert ok and values[-1] == fibonacci_s3()


def test_sphere_one_four_move_z3():
    T = fx.s3_two_tets()
    site = candidates(T, "1-4")[0]
    ok, values, _ = pachner_invariance(T, lambda X: tv_evaluate(X, pointed_fusion(3)).value,
                                       moves=[("1-4", site)])
    assert ok and values[0] == Fraction(1, 3)


def test_moves_and_inverses_restore_size():
    T = fx.tetrahedron_boundary()
    U = apply_move(T, "1-3", 0)
    assert U.n_simplices == T.n_simplices + 2
    sites = candidates(U, "3-1")
    assert sites
    assert apply_move(U, "3-1", sites[0]).n_simplices == T.n_simplices


def test_zero_moves_is_trivially_invariant():
    ok, values, applied = pachner_invariance(fx.torus_one_vertex(), lambda X: X.n_simplices, count=0)
    assert ok and applied == [] and len(values) == 1


@pytest.mark.parametrize("seed", range(3))
def test_random_moves_keep_closed_orientable(seed):
    for _, _, U in random_moves(fx.genus_two(), 15, seed=seed):
        assert U.is_closed
        U.check_orientation()
        assert U.euler_characteristic == -2


def test_invalid_moves():
    T = fx.torus_one_vertex()
    with pytest.raises(InvalidMove):
        apply_move(T, "1-4", 0)
    with pytest.raises(InvalidMove):
        apply_move(T, "1-3", 99)
    with pytest.raises(InvalidMove):
        apply_move(fx.s3_two_tets(), "4-1", 0)
    with pytest.raises(InvalidMove):
        candidates(T, "5-0")


# defects

def two_region_sphere(T, X):
    region = lambda v: "B" if v in (0, (0, 0)) else "A"  # noqa: E731
    return StratifiedComplex.from_vertex_keys(T, region, {"B": X.left, "A": X.right}, {("B", "A"): X})


@pytest.mark.parametrize("name", ["sign", "first projection", "Q^2", "sign^v", "Q^2^v"])
@pytest.mark.parametrize("make", [fx.tetrahedron_boundary, fx.sphere_two_triangles])
def test_defect_circle_on_sphere(name, make):
    X = bimodule_zoo()[name]
    if X.left.n == 1:  # the ground field disc is on the left: read actions from the right
        D, actions = X.right, X.ract
    else:
        D, actions = X.left, X.lact
    Dn = euler_gamma(D) if not D.is_delta_separable() else D
    want = sphere_defect_circle(Dn.algebra.mul, Dn.counit, Dn.euler, actions)
    S = two_region_sphere(make(), X)
    values = {orbifold_evaluate(S, p).value for p in HOST_POLICIES}
    assert len(values) == 1
    assert sym(values.pop()) == want


@pytest.mark.parametrize("fs", [euler_gamma(group_algebra(2)), matrix_algebra(2), scalar_algebra(3)],
                         ids=lambda f: f.name)
def test_identity_defect_is_transparent(fs):
    T = fx.torus_grid(3, 3)
    S = StratifiedComplex.from_vertex_keys(T, lambda v: "B" if v[0] == 0 else "A", {"A": fs, "B": fs},
                                           {("B", "A"): regular_bimodule(fs)})
    want = fhk_evaluate(T, fs).value
    for p in HOST_POLICIES:
        assert orbifold_evaluate(S, p).value == want


def test_trivial_stratification_reproduces_state_sums():
    fs = group_algebra(2)
    T = fx.genus_two()
    assert orbifold_evaluate(StratifiedComplex.trivial(T, fs)).value == fhk_evaluate(T, fs).value
    S3 = fx.s3_two_tets()
    assert orbifold_evaluate(StratifiedComplex.trivial(S3, fibonacci())).value == fibonacci_s3()


def test_label_adjacency_violations():
    fs = euler_gamma(group_algebra(2))
    T = fx.tetrahedron_boundary()
    region = lambda v: "B" if v == 0 else "A"  # noqa: E731
    with pytest.raises(LabelAdjacencyViolation):
        orbifold_evaluate(StratifiedComplex.from_vertex_keys(T, region, {"A": fs, "B": fs}))
    with pytest.raises(LabelAdjacencyViolation):
        orbifold_evaluate(StratifiedComplex.from_vertex_keys(T, region, {"A": fs},
                                                             {("B", "A"): regular_bimodule(fs)}))
    sign = bimodule_zoo()["sign"]
    with pytest.raises(LabelAdjacencyViolation):  # sign acts by Q on the right, not by Gamma(Q[Z2])
        orbifold_evaluate(StratifiedComplex.from_vertex_keys(T, region, {"A": fs, "B": fs}, {("B", "A"): sign}))


def test_transversality_violation():
    fs = euler_gamma(group_algebra(2))
    T = fx.tetrahedron_boundary()
    labels = {"A": fs, "B": fs, "C": fs}
    R = regular_bimodule(fs)
    S = StratifiedComplex.from_vertex_keys(T, lambda v: {0: "A", 1: "B"}.get(v, "C"), labels,
                                           {("A", "B"): R, ("B", "C"): R, ("A", "C"): R})
    with pytest.raises(TransversalityViolation):
        orbifold_evaluate(S)


def test_unknown_host_policy():
    S = StratifiedComplex.trivial(fx.torus_one_vertex(), group_algebra(2))
    with pytest.raises(ValueError):
        orbifold_evaluate(S, "middle")


def test_stratified_json_round_trip():
    X = bimodule_zoo()["sign"]
    S = two_region_sphere(fx.tetrahedron_boundary(), X)

    def resolve(ref, ctx):
        return FrobeniusStructure.from_json(ref) if ref["kind"] == "algebra" else Bimodule.from_json(ref)
    text = json.dumps(S.to_json(), sort_keys=True)
    back = StratifiedComplex.from_json(json.loads(text), resolve)
    assert json.dumps(back.to_json(), sort_keys=True) == text
    assert orbifold_evaluate(back).value == orbifold_evaluate(S).value


# state spaces

@pytest.mark.parametrize("S,data,want", [
    (fx.circle(1), group_algebra(2), 2),
    (fx.circle(3), euler_gamma(group_algebra(2)), 2),
    (fx.circle(2), matrix_algebra(2), 1),
    (fx.circle(1), product_algebra([1, 2, 3]), 3),
], ids=["Q[Z2] circle", "Gamma circle3", "Mat2", "Q^3"])
def test_two_dimensional_state_spaces(S, data, want):
    op = cylinder_operator(S, data)
    assert op.is_idempotent() and op.rank == want
    assert state_space_dim(S, data) == want


@pytest.mark.parametrize("n", [2, 3])
def test_pointed_torus_state_space(n):
    assert state_space_dim(fx.torus_one_vertex(), pointed_fusion(n)) == hom_count(fx.torus_one_vertex(), n)


def test_pointed_sphere_state_space():
    assert state_space_dim(fx.sphere_two_triangles(), pointed_fusion(2)) == 1


def test_fibonacci_state_spaces():
    assert state_space_dim(fx.tetrahedron_boundary(), fibonacci()) == 1
    # the Drinfeld centre of Fibonacci has 4 simples
    assert state_space_dim(fx.torus_one_vertex(), fibonacci()) == 4


def test_state_space_rejects_open_boundary_and_bad_data():
    with pytest.raises(NotClosed):
        cylinder_operator(OrderedTriangulation.from_simplices([[0, 1]]), group_algebra(2))
    with pytest.raises(TypeError):
        cylinder_operator(fx.circle(1), "Q")
    with pytest.raises(ValueError):
        cylinder_operator(fx.torus_one_vertex(), group_algebra(2))
