import json
import random
from fractions import Fraction

import pytest

from orbkit import linalg as la
from orbkit.errors import DegenerateTracePairing, NoSquareRootInField, NotSeparable, NotSplitSemisimple
from orbkit.ew import block_algebra, decompose, ew_forward, ew_inverse, ew_roundtrip_check, simple_module
from orbkit.frobenius import dual_numbers, euler_gamma, group_algebra, matrix_algebra, product_algebra, scalar_algebra
from orbkit.fusioncat import CYCategoryData
from orbkit.scalars import Field

QQ, K2 = Field(1), Field(2)


def random_lambdas(seed, count=10):
    rng = random.Random(seed)
    return [Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 30)) for _ in range(count)]


@pytest.mark.parametrize("lam", random_lambdas(0))
def test_scalar_trace_is_lambda_squared(lam):
    cy = ew_forward(scalar_algebra(lam))
    assert cy.size == 1 and cy.traces[0] == QQ(lam) ** 2


@pytest.mark.parametrize("lam", random_lambdas(1, 4))
def test_comparison_convention_is_linear_in_lambda(lam):
    assert ew_forward(scalar_algebra(lam), convention="few").traces[0] == QQ(lam)
    with pytest.raises(ValueError):
        ew_forward(scalar_algebra(lam), convention="other")


def test_group_algebra_has_two_equal_simples():
    cy = ew_forward(group_algebra(2))
    assert cy.dims == [1, 1]
    assert cy.traces[0] == cy.traces[1]
    # each block idempotent (1 +- g)/2 has counit 1/2, squared by the lambda^2 law
    assert cy.traces[0] == Fraction(1, 4)


def test_matrix_algebra_has_one_two_dimensional_simple():
    cy = ew_forward(matrix_algebra(2))
    assert cy.dims == [2]
    dec = decompose(matrix_algebra(2))
    assert dec.verify() and dec.simple_module_dims == [2]
    assert simple_module(matrix_algebra(2), dec.generators[0]).m == 2


@pytest.mark.parametrize("mu", [Fraction(1), Fraction(3), Fraction(-1, 2)])
def test_matrix_block_trace(mu):
    # a block Mat_n with counit mu tr carries lambda = mu^2 / n^3
    for n in [1, 2, 3]:
        assert ew_forward(matrix_algebra(n, scale=mu)).traces[0] == QQ(mu) ** 2 / n ** 3


def test_product_algebra_traces():
    cy = ew_forward(product_algebra([2, Fraction(1, 3)]))
    assert sorted(cy.traces) == sorted([QQ(4), QQ(Fraction(1, 9))])


@pytest.mark.parametrize("fs", [group_algebra(2), matrix_algebra(2), product_algebra([2, 3])],
                         ids=lambda f: f.name)
def test_euler_normalisation_leaves_traces_unchanged(fs):
    # the recorded psi compensates the rescaled counit
    assert ew_forward(euler_gamma(fs)).traces == ew_forward(fs).traces


def test_non_split_or_non_separable_inputs():
    with pytest.raises(NotSplitSemisimple):
        ew_forward(group_algebra(3))
    with pytest.raises(NotSeparable):
        ew_forward(dual_numbers())


def test_inverse_single_simple():
    fs = ew_inverse(CYCategoryData([1]))
    assert fs.n == 1 and fs.counit[0] == 1


def test_inverse_two_simples():
    fs = ew_inverse(CYCategoryData([1, 1]))
    assert fs.n == 2 and list(fs.counit) == [1, 1]
    assert la.array_equal(fs.algebra.mul, product_algebra([1, 1]).algebra.mul)


def test_inverse_needs_square_root():
    with pytest.raises(NoSquareRootInField):
        ew_inverse(CYCategoryData([2]))
    fs = ew_inverse(CYCategoryData([2], field=2))
    assert fs.counit[0] == K2.sqrt_d()
    assert ew_forward(fs).traces == [2]


def test_inverse_rejects_degenerate_trace():
    with pytest.raises(DegenerateTracePairing):
        ew_inverse(CYCategoryData([1, 0]))


def test_inverse_with_matrix_blocks():
    fs = ew_inverse(CYCategoryData([Fraction(1, 2)], dims=[2]))
    assert fs.n == 4 and fs.counit[0] == 2
    assert ew_forward(fs).traces == [Fraction(1, 2)]


@pytest.mark.parametrize("fs", [group_algebra(2), scalar_algebra(4), matrix_algebra(2, scale=4),
                                product_algebra([1, 5]), euler_gamma(group_algebra(2)),
                                block_algebra([1, 2], [3, 8], QQ)], ids=lambda f: f.name)
def test_roundtrip(fs):
    assert ew_roundtrip_check(fs)


def test_roundtrip_detects_doubled_trace():
    def double_first(cy):
        cy.traces[0] = cy.traces[0] * 2
        return cy
    # lambda = 1/4 becomes 1/2, whose root exists only after extending to Q(sqrt 2)
    assert not ew_roundtrip_check(group_algebra(2, F=K2), mutate=double_first)
    assert not ew_roundtrip_check(scalar_algebra(4), mutate=lambda cy: CYCategoryData([cy.traces[0] * 4]))


def test_cy_data_json_round_trip():
    cy = ew_forward(product_algebra([2, 3]))
    again = CYCategoryData.from_json(json.loads(json.dumps(cy.to_json())))
    assert again.traces == cy.traces and again.dims == cy.dims
