import json
import random
from fractions import Fraction

import pytest

from orbkit import linalg as la
from orbkit.errors import SchemaVersionMismatch, ShapeError
from orbkit.frobenius import FrobeniusStructure, euler_gamma, group_algebra
from orbkit.fusioncat import fibonacci
from orbkit.rtdefects import (
    AlgebraObject,
    BimoduleOverPair,
    BraidedFusionData,
    PairStructure,
    _braid,
    bimodule_fixtures,
    check_bimodule_over_pair,
    check_commutative_frobenius,
    check_frobenius_over_pair,
    graded_group_algebra,
    pair_fixtures,
    pointed_braided,
    regular_over_pair,
    svec,
    toric_code,
    vec_z2,
    vec_zn,
)
from orbkit.scalars import Field

QQ = Field(1)
PAIRS = pair_fixtures()
BIMODULES = bimodule_fixtures()


def dumps(obj):
    return json.dumps(obj.to_json(), sort_keys=True)


# braided data

@pytest.mark.parametrize("make,twists", [(vec_z2, [1, 1]), (svec, [1, -1]), (toric_code, [1, 1, 1, -1]),
                                         (lambda: vec_zn(3), [1, 1, 1])])
def test_hexagon_and_twists(make, twists):
    M = make()
    assert M.check_hexagon()
    assert M.twists() == twists
    assert M.twists()[0] == 1


def test_non_bicharacter_breaks_hexagon():
    M = pointed_braided((2,), lambda x, y: 2 if x[0] * y[0] else 1, name="bad")
    assert not M.check_hexagon()
    which, _ = M.hexagon_defect()
    assert which in ("hexagon", "inverse hexagon")


def test_missing_r_symbol_rejected():
    M = vec_z2()
    R = dict(M.R)
    R.pop((1, 1, 0))
    with pytest.raises(ShapeError):
        BraidedFusionData(M.fusion, R)


def test_non_pointed_ambient_rejected_for_algebra_objects():
    C = fibonacci()
    R = {t: 1 for t in C.N}
    M = BraidedFusionData(C, R, name="Fib with trivial R")
    with pytest.raises(ShapeError):
        AlgebraObject(M, group_algebra(1), [0])


def test_braided_json_round_trip():
    for M in [vec_z2(), svec(), toric_code()]:
        text = dumps(M)
        assert dumps(BraidedFusionData.from_json(json.loads(text))) == text
    data = toric_code().to_json()
    data["schema_version"] = 3
    with pytest.raises(SchemaVersionMismatch):
        BraidedFusionData.from_json(data)


# commutative Frobenius algebras

def test_trivial_algebra_in_vec_is_commutative_frobenius():
    vec = pointed_braided((), lambda x, y: 1, names=["1"], name="Vec")
    assert check_commutative_frobenius(graded_group_algebra(vec, [0]))


def test_group_algebra_in_symmetric_vec_z2():
    assert check_commutative_frobenius(graded_group_algebra(vec_z2(), [0, 1]))


def test_group_algebra_in_svec_is_not_commutative():
    r = check_commutative_frobenius(graded_group_algebra(svec(), [0, 1]))
    assert not r and r.witness.startswith("commutativity")


def test_bosonic_toric_subalgebras():
    tc = toric_code()
    for sub in ([0, 1], [0, 2]):
        assert check_commutative_frobenius(graded_group_algebra(tc, sub))
    r = check_commutative_frobenius(graded_group_algebra(tc, [0, 1, 2, 3]))
    assert not r  # m and e braid nontrivially


def test_unnormalised_algebra_fails_delta_separability():
    M = vec_z2()
    A = AlgebraObject(M, group_algebra(2), [0, 1])
    r = check_commutative_frobenius(A)
    assert not r and "Delta-separability" in r.witness


def test_misgraded_algebra_detected():
    M = vec_z2()
    A = AlgebraObject(M, euler_gamma(group_algebra(2)), [1, 0])
    r = check_commutative_frobenius(A)
    assert not r and "grading" in r.witness


def test_subgroup_must_be_closed():
    with pytest.raises(ShapeError):
        graded_group_algebra(vec_zn(3), [0, 1])


# Frobenius algebras over a pair

@pytest.mark.parametrize("P,expected", PAIRS, ids=[P.name for P, _ in PAIRS])
def test_pair_characterisations_agree(P, expected):
    r = check_frobenius_over_pair(P)
    assert r.agree
    assert r.via_frobenius_maps == expected and r.via_kmrs_diagrams == expected
    if not expected:
        assert r.witness_maps and r.witness_kmrs


def random_graded_basis_change(labels, rng):
    n = len(labels)
    while True:
        P = la.zeros((n, n), QQ)
        for i in range(n):
            for j in range(n):
                if labels[i] == labels[j]:
                    P[i, j] = QQ(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        if la.rank(P) == n:
            return P


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("index", range(len(PAIRS)), ids=[P.name for P, _ in PAIRS])
def test_pair_verdict_invariant_under_basis_change(index, seed):
    P, expected = PAIRS[index]
    rng = random.Random(seed)
    PF = random_graded_basis_change(P.F.labels, rng)
    PA = random_graded_basis_change(P.A.labels, rng)
    PB = random_graded_basis_change(P.B.labels, rng)
    r = check_frobenius_over_pair(P.transformed(PF, PA, PB))
    assert r.agree and r.via_frobenius_maps == expected


def test_algebra_basis_change_must_preserve_grading():
    A = graded_group_algebra(vec_z2(), [0, 1])
    with pytest.raises(ShapeError):
        A.transformed(la.as_field_array([[0, 1], [1, 0]], QQ))


@pytest.mark.parametrize("index", range(len(PAIRS)), ids=[P.name for P, _ in PAIRS])
def test_pair_json_round_trip(index):
    P, expected = PAIRS[index]
    text = dumps(P)
    back = PairStructure.from_json(json.loads(text))
    assert dumps(back) == text
    assert check_frobenius_over_pair(back).via_frobenius_maps == expected


def test_algebra_object_json_round_trip():
    A = graded_group_algebra(toric_code(), [0, 1, 2, 3])
    text = dumps(A)
    assert dumps(AlgebraObject.from_json(json.loads(text))) == text
    assert FrobeniusStructure.from_json(A.to_json()["algebra"]).is_delta_separable()


# bimodules over a pair

@pytest.mark.parametrize("X,expected", BIMODULES, ids=[X.name for X, _ in BIMODULES])
def test_bimodule_fixtures(X, expected):
    r = check_bimodule_over_pair(X)
    assert bool(r) == expected
    if not expected:
        assert "exchange" in r.witness


def test_inverse_braiding_matters_only_for_nontrivial_braiding():
    pairs = {P.name: P for P, ok in PAIRS if ok}
    P = pairs["Vec_Z2: A regular over (A, A)"]
    X = regular_over_pair(P)
    inv = _braid(P.ambient, X.labels, P.B.labels, inverse=True)
    # symmetric braiding: c^{-1} equals c, so the override changes nothing
    Y = BimoduleOverPair(X.labels, P, P, X.left, X.right, braid_override={"B": inv})
    assert check_bimodule_over_pair(Y)


def test_corrupted_bimodule_action_detected():
    pairs = {P.name: P for P, ok in PAIRS if ok}
    X = regular_over_pair(pairs["toric: Z2xZ2 over (1+m, 1+e)"])
    left = X.left.copy()
    left[0, 0] = left[0, 0] * 2
    r = check_bimodule_over_pair(BimoduleOverPair(X.labels, X.G, X.F, left, X.right))
    assert not r


def test_mismatched_pairs_rejected():
    pairs = {P.name: P for P, ok in PAIRS if ok}
    G = pairs["Vec_Z2: A regular over (A, A)"]
    F = pairs["Vec_Z2: A over (1, A)"]
    X = BimoduleOverPair(list(F.F.labels), G, F, G.F.mu, F.F.mu)
    r = check_bimodule_over_pair(X)
    assert not r and "same A" in r.witness


@pytest.mark.parametrize("X,expected", BIMODULES, ids=[X.name for X, _ in BIMODULES])
def test_bimodule_json_round_trip(X, expected):
    text = dumps(X)
    back = BimoduleOverPair.from_json(json.loads(text))
    assert dumps(back) == text
    assert bool(check_bimodule_over_pair(back)) == expected
