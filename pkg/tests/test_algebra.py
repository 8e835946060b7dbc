import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lscolor.algebra import (
    Bimodule,
    GradedAlgebra,
    GradedLinOp,
    HomogeneityError,
    associator_difference,
    bracket_sparse,
    color_bracket,
    multiply,
    standard_bimodule,
    verify_left_symmetric,
)
from lscolor.catalog import X, Y1, Y2, a_alpha, example37
from lscolor.exactnum import ONE, CycScalar
from lscolor.grading import AbelianGroup, Bicharacter

from conftest import unital_color_algebra

z4 = CycScalar.zeta(4)


def test_products_from_tables():
    A = a_alpha(1)
    assert multiply(A, [1, 0], [1, 0]) == [0, 1]
    B = example37()
    assert multiply(B, [0, 1, 0], [0, 0, 1]) == [1, 0, 0]
    assert multiply(B, [0, 0, 1], [0, 1, 0]) == [-1, 0, 0]
    assert multiply(B, [0, 0, 0], [3, 1, 2]) == [0, 0, 0]


def test_grading_violation_rejected():
    G = AbelianGroup([2])
    with pytest.raises(HomogeneityError):
        GradedAlgebra([G(0), G(1)], Bicharacter.super_sign(), {(1, 1): {1: 1}})


@pytest.mark.parametrize("alpha", [1, 2, z4])
def test_a_alpha_is_left_symmetric(alpha):
    assert verify_left_symmetric(a_alpha(alpha))


def test_example37_is_left_symmetric():
    rep = verify_left_symmetric(example37())
    assert rep.passed and rep.checked == 27


def test_perturbed_example37_fails():
    A = example37()
    products = dict(A.products)
    products[(X, Y1)] = {Y1: 2}
    B = GradedAlgebra(A.degrees, A.bicharacter, products, labels=A.labels)
    rep = verify_left_symmetric(B)
    assert not rep.passed
    assert all(Y1 in (i, j, k) for i, j, k, _ in rep.failures)


def _random_homogeneous(A, rng, degree):
    idx = [k for k in range(A.dim) if A.degrees[k] == degree]
    vec = {k: CycScalar(rng.randint(-3, 3)) for k in idx}
    return {k: v for k, v in vec.items() if v}


@pytest.mark.parametrize("builder", [example37, lambda: a_alpha(z4), unital_color_algebra])
def test_identity_on_random_homogeneous_triples(builder):
    A = builder()
    rng = random.Random(7)
    degrees = sorted(set(A.degrees))
    for _ in range(50):
        dx, dy, dz = (rng.choice(degrees) for _ in range(3))
        x, y, z = (_random_homogeneous(A, rng, d) for d in (dx, dy, dz))
        assert associator_difference(A, x, y, z, dx, dy) == {}


def test_bracket_examples():
    A = example37()
    assert color_bracket(A, [0, 1, 0], [0, 0, 1]) == [0, 0, 0]
    B = a_alpha(1)  # eps(1,1) = -1
    assert color_bracket(B, [1, 0], [1, 0]) == [0, 2]
    assert color_bracket(B, [1, 0], [0, 0]) == [0, 0]


@given(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_bracket_antisymmetry(i, j, a, b):
    A = unital_color_algebra()
    x, y = {i: CycScalar(a)}, {j: CycScalar(b)}
    x = {k: v for k, v in x.items() if v}
    y = {k: v for k, v in y.items() if v}
    dx, dy = A.degrees[i], A.degrees[j]
    lhs = bracket_sparse(A, x, y, dx, dy)
    rhs = bracket_sparse(A, y, x, dy, dx)
    e = A.eps(dx, dy)
    assert lhs == {k: -e * v for k, v in rhs.items() if v}


def test_standard_bimodule_actions():
    A = a_alpha(1)
    V = standard_bimodule(A)
    assert V.act_left({0: ONE}, {0: ONE}) == {1: ONE}
    assert V.act_left({0: ONE}, {1: ONE}) == {}
    B = example37()
    W = standard_bimodule(B)
    assert [W.act_left({X: ONE}, {k: ONE}) for k in range(3)] == [{X: 2}, {Y1: 1}, {Y2: 1}]
    assert standard_bimodule(B) is W


def test_zero_algebra_bimodule():
    G = AbelianGroup([2])
    A = GradedAlgebra([G(0), G(1)], Bicharacter.super_sign(), {})
    V = standard_bimodule(A)
    assert V.left == {} and V.right == {}


def test_bimodule_grading_checked():
    A = example37()
    with pytest.raises(HomogeneityError):
        Bimodule(A, A.degrees, {(X, Y1): {X: 1}}, {})


def test_operator_homogeneity_enforced():
    A = a_alpha(1)
    with pytest.raises(HomogeneityError):
        GradedLinOp(A, A.group.zero(), [[1, 0], [1, 1]])
    P = GradedLinOp(A, A.group(1), [[0, 0], [3, 0]])
    assert P.is_homogeneous()
    assert (P @ P).is_zero()
    assert (P @ P).degree == A.group(2)


def test_operator_arithmetic():
    A = example37()
    P = GradedLinOp.diagonal(A, [1, 2, 3])
    I = GradedLinOp.identity(A)
    assert (P - I) + I == P
    assert P ** 0 == I
    assert (P ** 2).image(2) == {2: 9}
    assert P.scale(2)({1: ONE}) == {1: 4}
    with pytest.raises(HomogeneityError):
        P + GradedLinOp.from_images(A, A.group(1), {0: {1: 1}})
