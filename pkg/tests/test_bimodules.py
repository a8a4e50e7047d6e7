import dataclasses
import json
from fractions import Fraction

import pytest
from oracles import coequalizer_dim

from orbkit import linalg as la
from orbkit.bimodules import (
    Bimodule,
    BimoduleMap,
    adjoint,
    check_pivotality,
    double_dual_iso,
    regular_bimodule,
    relative_tensor,
    split_orbifold_datum,
    trace_and_qdim,
    zorro_check,
    zorro_composites,
)
from orbkit.errors import MiddleAlgebraMismatch, NotABimodule, NotAnOrbifoldDatum, NotSeparable
from orbkit.frobenius import dual_numbers, euler_gamma, group_algebra, matrix_algebra, product_algebra, scalar_algebra
from orbkit.scalars import Field
from orbkit.suite import bimodule_zoo, dual_bimodule

K = Field(1)
Q = scalar_algebra(1)
Z2 = euler_gamma(group_algebra(2))
ZOO = bimodule_zoo()


def test_regular_relative_product_is_regular():
    for A in [Z2, matrix_algebra(2), euler_gamma(group_algebra(3))]:
        R = regular_bimodule(A)
        rp = relative_tensor(R, R)
        assert rp.split.verify() and rp.Z.m == A.n
        # multiplication is balanced, so it factors through the projection
        mu = A.algebra.mul.transpose(2, 0, 1).reshape(A.n, A.n * A.n)
        assert la.array_equal(mu @ rp.split.p, mu)
        # pi and mu agree up to an invertible change of basis of the image
        change = mu @ rp.split.iota
        assert la.rank(change) == A.n
        assert la.array_equal(change @ rp.split.pi, mu)


def test_projection_dual_product_is_one_dimensional():
    proj = ZOO["first projection"]
    rp = relative_tensor(dual_bimodule(proj), proj)
    assert rp.Z.m == 1


def test_group_algebra_self_product_dimension():
    R = regular_bimodule(Z2)
    assert relative_tensor(R, R).Z.m == 2


@pytest.mark.parametrize("name", sorted(ZOO))
def test_relative_product_dimension_matches_coequalizer(name):
    X = ZOO[name]
    Y = dual_bimodule(X)
    rp = relative_tensor(X, Y)
    assert rp.split.verify()
    assert rp.Z.m == coequalizer_dim(X.ract, Y.lact, X.m, Y.m)
    rp.Z.check_axioms()


def test_middle_algebra_mismatch():
    with pytest.raises(MiddleAlgebraMismatch):
        relative_tensor(ZOO["sign"], regular_bimodule(Z2))


def test_invalid_bimodule_rejected():
    with pytest.raises(NotABimodule):
        Bimodule(Z2, Q, [la.eye(1, K), 2 * la.eye(1, K)], [la.eye(1, K)])
    with pytest.raises(NotABimodule):
        Bimodule(Z2, Q, [la.eye(1, K)], [la.eye(1, K)])


def test_non_separable_middle_algebra_rejected():
    R = regular_bimodule(dual_numbers())
    with pytest.raises(NotSeparable):
        relative_tensor(R, R)


@pytest.mark.parametrize("name", sorted(ZOO))
def test_zorro_on_fixtures(name):
    assert zorro_check(ZOO[name]) == (True, None)
    assert zorro_check(ZOO[name], euler=False) == (True, None)


@pytest.mark.parametrize("name", ["regular Gamma(Q[Z2])", "sign", "Q^2"])
def test_corrupted_coev_fails_zorro(name):
    X = ZOO[name]
    adj = adjoint(X)
    bad = dataclasses.replace(adj, coev=adj.coev * 2)
    ok, witness = zorro_check(X, adj=bad)
    assert not ok and witness == "ev_coev_on_X"
    composites = zorro_composites(bad)
    assert la.array_equal(composites["ev_coev_on_X"], 2 * la.eye(X.m, K))


def test_adjunction_maps_are_intertwiners():
    for X in ZOO.values():
        for f in adjoint(X).maps().values():
            assert f.is_intertwiner()


def test_regular_bimodule_dimension_is_unit():
    for A in [Z2, matrix_algebra(2)]:
        t = trace_and_qdim(regular_bimodule(A))
        assert t["dim_l"] == 1 and t["dim_r"] == 1


@pytest.mark.parametrize("lam", [Fraction(3), Fraction(1, 2), Fraction(-5, 7)])
def test_euler_dimension_is_lambda_squared_times_plain(lam):
    X = Bimodule(scalar_algebra(lam), Q, [la.eye(1, K)], [la.eye(1, K)])
    plain = trace_and_qdim(X, euler=False)["dim_r"]
    assert plain == 1
    assert trace_and_qdim(X)["dim_r"] == K(lam) ** 2 * plain


def test_nilpotent_endomorphism_has_zero_traces():
    X = Bimodule(Q, Q, [la.eye(2, K)], [la.eye(2, K)])
    chi = la.as_field_array([[0, 1], [0, 0]], K)
    t = trace_and_qdim(X, chi)
    assert la.is_zero(t["tr_l"]) and la.is_zero(t["tr_r"])
    assert trace_and_qdim(X)["dim_l"] == 2


def test_identity_trace_matches_matrix_trace_over_field():
    X = Bimodule(Q, Q, [la.eye(3, K)], [la.eye(3, K)])
    chi = la.as_field_array([[1, 2, 0], [0, 5, 1], [7, 0, -2]], K)
    t = trace_and_qdim(X, chi)
    assert t["dim_l"] == 4 and t["dim_r"] == 4


@pytest.mark.parametrize("pair", [("Q^2", "Q^2^v"), ("Q^2^v", "Q^2"),
                                  ("first projection^v", "first projection")])
def test_quantum_dimension_is_multiplicative(pair):
    X, Y = ZOO[pair[0]], ZOO[pair[1]]
    tX, tY = trace_and_qdim(X), trace_and_qdim(Y)
    tXY = trace_and_qdim(relative_tensor(X, Y).Z)
    for key in ["dim_l", "dim_r"]:
        if tX[key] is not None and tY[key] is not None:
            assert tXY[key] == tX[key] * tY[key]
    assert tXY["dim_l"] is not None


def test_pivotality_of_bimodule_maps():
    R = regular_bimodule(Z2)
    g = Z2.algebra.basis(1)
    mult_g = BimoduleMap(R, R, Z2.algebra.left_matrix(g))
    assert mult_g.is_intertwiner()
    assert check_pivotality(mult_g)
    for X in ZOO.values():
        assert check_pivotality(X.identity())


def test_double_dual_is_canonical():
    X = ZOO["Q^2"]
    iso = double_dual_iso(X)
    assert iso.is_intertwiner()


def test_split_orbifold_identity_datum():
    s = split_orbifold_datum(Q)
    assert s.X.m == 1
    assert la.array_equal(s.iso.matrix, la.eye(1, K))


@pytest.mark.parametrize("D", [Z2, euler_gamma(group_algebra(3)), euler_gamma(matrix_algebra(2)),
                               euler_gamma(product_algebra([1, 2]))], ids=lambda d: d.name)
def test_split_orbifold_datum_condenses(D):
    s = split_orbifold_datum(D)
    assert la.array_equal(s.condensation, la.eye(D.n, K))
    phi = s.iso.matrix
    assert la.rank(phi) == D.n
    alg = s.algebra_of_split
    assert la.array_equal(phi @ D.unit, alg["unit"])
    assert la.array_equal(alg["counit"] @ phi, D.counit)


def test_dual_numbers_are_not_an_orbifold_datum():
    with pytest.raises(NotAnOrbifoldDatum):
        split_orbifold_datum(dual_numbers())


def test_group_algebra_without_normalisation_is_not_an_orbifold_datum():
    with pytest.raises(NotAnOrbifoldDatum):
        split_orbifold_datum(group_algebra(2))


def test_json_round_trip():
    for X in ZOO.values():
        text = json.dumps(X.to_json(), sort_keys=True)
        Y = Bimodule.from_json(json.loads(text))
        assert json.dumps(Y.to_json(), sort_keys=True) == text
