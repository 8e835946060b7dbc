from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lscolor.algebra import GradedLinOp, HomogeneityError
from lscolor.catalog import X, Y1, Y2, a_alpha, example37, load
from lscolor.exactnum import CycScalar, as_scalar
from lscolor.operators import (
    HypothesisError,
    correspondence_checks,
    nijenhuis_power_identity,
    nijenhuis_residual,
    rota_baxter_residual,
    square_classes,
    square_of_products_vanishes,
)

from conftest import square_families

z4 = CycScalar.zeta(4)
GRID = [Fraction(v) for v in (-3, -2, -1, 0, 1, 2, Fraction(1, 2))]


def shift(A, s):
    return GradedLinOp.from_images(A, A.group(1), {0: {1: s}})


# -- Nijenhuis ------------------------------------------------------------------------------

@pytest.mark.parametrize("alpha", [1, 2, z4])
@pytest.mark.parametrize("r", GRID)
def test_scalars_are_nijenhuis(alpha, r):
    A = a_alpha(alpha)
    assert nijenhuis_residual(GradedLinOp.identity(A).scale(r)).is_zero


def test_diag_residual_value():
    A = a_alpha(1)
    res = nijenhuis_residual(GradedLinOp.diagonal(A, [1, 2]))
    assert res.kind == "nijenhuis"
    assert res.residuals == {(0, 0): {1: 1}}
    assert res.max_support == 1 and not res


@pytest.mark.parametrize("alpha", [1, 3, z4])
def test_diag_residual_formula(alpha):
    # (r - w)^2 alpha y at (x, x)
    A = a_alpha(alpha)
    for r in GRID:
        for w in GRID:
            res = nijenhuis_residual(GradedLinOp.diagonal(A, [r, w]))
            want = (r - w) ** 2 * as_scalar(alpha)
            assert res.residuals.get((0, 0), {}).get(1, 0) == want
            assert res.is_zero == (r == w)


@pytest.mark.parametrize("s", [1, -1, 2, Fraction(1, 3), z4])
def test_shift_is_nijenhuis(s):
    for q in (-1, 1):
        assert nijenhuis_residual(shift(a_alpha(1, q), s)).is_zero


def test_example37_nijenhuis_examples(ex37):
    assert nijenhuis_residual(GradedLinOp.identity(ex37)).is_zero
    assert nijenhuis_residual(GradedLinOp.zero(ex37)).is_zero
    assert not nijenhuis_residual(GradedLinOp.diagonal(ex37, [1, 0, 0]))


# -- power identity --------------------------------------------------------------------------

def test_power_identity_trivial_case():
    A = a_alpha(1)
    for P in (GradedLinOp.identity(A).scale(3), GradedLinOp.zero(A)):
        assert nijenhuis_power_identity(P, 0, 0).is_zero


def test_power_identity_scalar():
    A = a_alpha(1)
    assert nijenhuis_power_identity(GradedLinOp.identity(A).scale(2), 2, 3).is_zero


def test_power_identity_shift_with_trivial_sign():
    A = a_alpha(1, q=1)
    P = shift(A, 1)
    for i in range(4):
        for j in range(4):
            assert nijenhuis_power_identity(P, i, j).is_zero


def test_power_identity_hypotheses_enforced():
    with pytest.raises(HypothesisError, match="eps"):
        nijenhuis_power_identity(shift(a_alpha(1), 1), 1, 1)
    with pytest.raises(HypothesisError, match="not a Nijenhuis"):
        nijenhuis_power_identity(GradedLinOp.diagonal(a_alpha(1), [1, 2]), 1, 1)
    with pytest.raises(ValueError):
        nijenhuis_power_identity(GradedLinOp.identity(a_alpha(1)), -1, 0)


def test_hypothesis_error_is_distinct_from_a_failing_residual():
    assert not issubclass(HypothesisError, HomogeneityError)


@given(st.sampled_from(["P^2=0", "P^2=P", "P^2=I"]), st.integers(0, 100), st.integers(0, 3), st.integers(0, 3))
def test_power_identity_on_verified_families(kind, pick, i, j):
    family = [P for P in square_families()[kind] if nijenhuis_residual(P).is_zero]
    P = family[pick % len(family)]
    assert nijenhuis_power_identity(P, i, j).is_zero


# -- Rota-Baxter ------------------------------------------------------------------------------

def test_rb_examples():
    A = a_alpha(1)
    assert rota_baxter_residual(GradedLinOp.diagonal(A, [1, Fraction(1, 3)]), 1).is_zero
    assert rota_baxter_residual(GradedLinOp.zero(A), 0).is_zero
    res = rota_baxter_residual(GradedLinOp.identity(A), 0)
    assert res.residuals == {(0, 0): {1: -1}}
    assert res.kind == "rota-baxter" and res.weight == 0


@pytest.mark.parametrize("weight", [0, 1, -1, 2, z4])
def test_rb_grid_completeness(weight):
    # for each r with 2r + weight != 0 the only zero-residual w is r^2 / (2r + weight)
    A = a_alpha(1)
    weight = as_scalar(weight)
    for r in GRID:
        if (2 * r + weight).is_zero():
            continue
        w0 = r * r / (2 * r + weight)
        candidates = [w0 + k for k in (-2, -1, 0, 1, 2)] + [CycScalar(g) for g in GRID]
        for w in candidates:
            assert rota_baxter_residual(GradedLinOp.diagonal(A, [r, w]), weight).is_zero == (w == w0)


def test_rb_on_example37(ex37):
    assert rota_baxter_residual(GradedLinOp.identity(ex37).scale(-1), 1).is_zero
    assert not rota_baxter_residual(GradedLinOp.identity(ex37), 0)


# -- correspondences ---------------------------------------------------------------------------

def test_square_classes():
    A = a_alpha(1)
    assert square_classes(GradedLinOp.zero(A)) == ("P^2=0", "P^2=P")
    assert square_classes(GradedLinOp.identity(A)) == ("P^2=P", "P^2=I")
    assert square_classes(shift(A, 1)) == ("P^2=0",)
    assert square_classes(GradedLinOp.diagonal(A, [2, 1])) == ()


def test_correspondence_identity():
    rep = correspondence_checks(GradedLinOp.identity(a_alpha(1)))
    names = [c.right for c in rep.checks]
    assert "rota-baxter(-2) of P+I" in names and "rota-baxter(2) of P-I" in names
    assert rep.agree


def test_correspondence_projection():
    rep = correspondence_checks(GradedLinOp.diagonal(a_alpha(1), [1, 0]))
    assert rep.squares == ("P^2=P",)
    (check, *_rest) = rep.checks
    assert check.right == "rota-baxter(-1)"
    assert check.agree


def test_correspondence_shift():
    rep = correspondence_checks(shift(a_alpha(1), 2))
    assert rep.checks[0].left_holds and rep.checks[0].right_holds
    assert rep.agree


def test_correspondence_not_applicable():
    rep = correspondence_checks(GradedLinOp.diagonal(a_alpha(1), [2, 1]))
    assert not rep.applicable and rep.agree


@pytest.mark.parametrize("kind", ["P^2=0", "P^2=P", "P^2=I"])
def test_correspondence_over_families(kind):
    ops = square_families()[kind]
    assert len(ops) >= 10
    for P in ops:
        assert kind in square_classes(P)
        rep = correspondence_checks(P)
        assert rep.agree, [c for c in rep.checks if not c.agree]


def test_families_contain_non_nijenhuis_members():
    # the biconditionals are not vacuous: both sides fail together somewhere
    for kind in ("P^2=P", "P^2=I"):
        assert any(not nijenhuis_residual(P) for P in square_families()[kind])


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_rb_zero_iff_square_kills_products(a, b, c):
    B = example37()
    P = GradedLinOp(B, B.group.zero(), [[a, 0, 0], [0, b, c], [0, c, b]])
    if nijenhuis_residual(P).is_zero:
        assert rota_baxter_residual(P, 0).is_zero == square_of_products_vanishes(P)


def test_operator_attachments():
    entry = load("a_alpha")
    assert nijenhuis_residual(entry.attachments["shift"]).is_zero
    assert entry.attachments["identity"] == GradedLinOp.identity(entry.algebra)


def test_residual_keys_are_basis_pairs(ex37):
    res = nijenhuis_residual(GradedLinOp.diagonal(ex37, [1, 2, 3]))
    assert all(0 <= i < 3 and 0 <= j < 3 for i, j in res.residuals)
    assert res.max_support == sum(len(v) for v in res.residuals.values())
    assert {(X, Y1), (X, Y2), (Y1, Y2)} & set(res.residuals)
