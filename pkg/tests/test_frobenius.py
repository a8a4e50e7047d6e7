import json
import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from orbkit import linalg as la
from orbkit.errors import NoSquareRootInField, NotAssociative, NotFrobenius, NotSeparable
from orbkit.frobenius import (
    Algebra,
    FrobeniusStructure,
    central_idempotents,
    check_frobenius,
    dual_numbers,
    euler_gamma,
    group_algebra,
    matrix_algebra,
    product_algebra,
    scalar_algebra,
    window_element,
    window_sqrt,
)
from orbkit.scalars import Field

QQ, K2 = Field(1), Field(2)


def vec(values, F=QQ):
    return la.as_field_array(values, F)


def report(fs):
    return check_frobenius(fs.algebra, fs.counit)


def test_group_algebra_report():
    r = report(group_algebra(2))
    assert (r.frobenius, r.symmetric, r.separable, r.delta_separable) == (True, True, True, False)
    assert list(r.window) == [2, 0]


def test_dual_numbers_report():
    r = report(dual_numbers())
    assert (r.frobenius, r.symmetric, r.separable) == (True, True, False)
    assert list(r.window) == [0, 2]  # omega = 2x


def test_matrix_algebra_report():
    r = report(matrix_algebra(2))
    assert (r.frobenius, r.symmetric, r.separable) == (True, True, True)
    assert list(r.window) == [2, 0, 0, 2]


def test_degenerate_counit_raises_with_kernel_witness():
    A = group_algebra(2).algebra
    with pytest.raises(NotFrobenius) as info:
        check_frobenius(A, [1, 1])
    w = info.value.witness
    assert w is not None and not la.is_zero(w)
    pairing = np.einsum("ijk,k->ij", A.mul, vec([1, 1]))
    assert la.is_zero(pairing @ w)


def test_non_associative_rejected():
    mul = la.zeros((2, 2, 2), QQ)
    mul[0, 0, 0] = mul[0, 1, 1] = mul[1, 0, 1] = QQ(1)
    mul[1, 1, 1] = QQ(1)
    mul[1, 1, 0] = QQ(1)  # x*x = 1 + x
    Algebra(mul, [1, 0], QQ)
    mul[0, 1, 0] = QQ(1)  # 1*x = 1 + x breaks the unit law
    with pytest.raises(NotAssociative):
        Algebra(mul, [1, 0], QQ)


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(3), Fraction(-2, 5)])
def test_scalar_window_is_inverse_counit(lam):
    assert window_element(scalar_algebra(lam))[0] == 1 / QQ(lam)


def test_delta_separable_window_is_unit():
    G = euler_gamma(group_algebra(3))
    assert G.is_delta_separable()
    assert la.array_equal(window_element(G), G.unit)


def test_euler_gamma_group_algebra():
    G = euler_gamma(group_algebra(2))
    assert la.array_equal(G.window, G.unit)
    assert la.array_equal(G.psi, vec([2, 0]))
    assert list(G.counit) == [2, 0]


def test_euler_gamma_matrix_algebra():
    G = euler_gamma(matrix_algebra(2))
    assert la.array_equal(G.psi, vec([2, 0, 0, 2]))
    assert G.counit[0] == 2  # eps'(E_11)


def test_euler_gamma_on_delta_separable_input_is_unchanged():
    G = euler_gamma(group_algebra(2))
    GG = euler_gamma(G)
    assert la.array_equal(GG.counit, G.counit)
    assert la.array_equal(GG.psi, G.unit)


def test_euler_gamma_needs_separable():
    with pytest.raises(NotSeparable):
        euler_gamma(dual_numbers())


def test_window_sqrt_examples():
    with pytest.raises(NoSquareRootInField):
        window_sqrt(group_algebra(2))
    s = window_sqrt(group_algebra(2, F=K2))
    assert la.array_equal(s, vec([K2(0, 1), K2(0)], K2))
    assert la.array_equal(window_sqrt(euler_gamma(group_algebra(2))), vec([1, 0]))
    P = product_algebra([Fraction(1, 4), Fraction(1, 9)])
    assert la.array_equal(P.window, vec([4, 9]))
    assert la.array_equal(window_sqrt(P), vec([2, 3]))


def test_central_idempotents_of_group_algebra():
    idems = central_idempotents(group_algebra(2).algebra)
    half = Fraction(1, 2)
    assert sorted(tuple(e) for e in idems) == sorted([(half, half), (half, -half)])


def frobenius_relations_hold(fs):
    mul, D = fs.algebra.mul, fs.comul
    delta_mu = np.einsum("ijk,kab->ijab", mul, D)
    left = np.einsum("iac,cjb->ijab", D, mul)   # (id (x) mu)(Delta (x) id)
    right = np.einsum("jcb,ica->ijab", D, mul)  # (mu (x) id)(id (x) Delta)
    counit_law = np.einsum("kab,b->ka", D, fs.counit)
    return (la.array_equal(delta_mu, left) and la.array_equal(delta_mu, right)
            and la.array_equal(counit_law, la.eye(fs.n, fs.F)))


@pytest.mark.parametrize("fs", [group_algebra(2), group_algebra(3, counit_e=5), matrix_algebra(2),
                                dual_numbers(), product_algebra([1, Fraction(2, 3)]), scalar_algebra(7)],
                         ids=lambda f: f.name)
def test_frobenius_relations(fs):
    assert frobenius_relations_hold(fs)
    assert frobenius_relations_hold(euler_gamma(fs)) if fs.is_separable() else True


def brute_force_symmetric(fs):
    for i, j in product(range(fs.n), repeat=2):
        eij = fs.algebra.multiply(fs.algebra.basis(i), fs.algebra.basis(j))
        eji = fs.algebra.multiply(fs.algebra.basis(j), fs.algebra.basis(i))
        if fs.epsilon(eij) != fs.epsilon(eji):
            return False
    return True


def test_symmetry_agrees_with_brute_force():
    Mat = matrix_algebra(2)
    skew = Mat.with_counit([1, 1, 0, 2])  # eps(E_12) != eps(E_21)
    for fs in [group_algebra(3), Mat, skew, dual_numbers()]:
        assert fs.is_symmetric() == brute_force_symmetric(fs)
    assert not skew.is_symmetric()


def test_psi_must_be_central():
    Mat = matrix_algebra(2)
    with pytest.raises(ValueError):
        Mat.with_counit(Mat.counit, psi=[0, 1, 0, 0])


@pytest.mark.parametrize("seed", range(4))
def test_json_round_trip(seed):
    rng = random.Random(seed)
    fs = euler_gamma(group_algebra(rng.randint(2, 4), counit_e=Fraction(rng.randint(1, 9), rng.randint(1, 4))))
    text = json.dumps(fs.to_json(), sort_keys=True)
    back = FrobeniusStructure.from_json(json.loads(text))
    assert json.dumps(back.to_json(), sort_keys=True) == text
    assert la.array_equal(back.psi, fs.psi)


def test_extend_to_larger_field():
    fs = group_algebra(2).extend(K2)
    assert fs.F == K2 and la.array_equal(fs.window, vec([2, 0], K2))
