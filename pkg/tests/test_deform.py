import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lscolor.algebra import GradedLinOp, HomogeneityError, standard_bimodule
from lscolor.catalog import X, Y1, Y2, example37, example37_cocycle, load
from lscolor.cochain import Cochain, coboundary, cochain_basis, cohomology
from lscolor.deform import (
    Deformation,
    DeformationError,
    EquivalenceMap,
    as_linear_cochain,
    as_operator,
    equivalence_residual,
    extend_deformation,
    formal_inverse,
    infinitesimal_cocycle_check,
    infinitesimal_equivalence,
    obstruction_and_extend,
    star,
    transport,
    verify_deformation,
)
from lscolor.exactnum import ONE, CycScalar

from conftest import unital_color_algebra

def _random_cochain(A, n, degree, rng, lo=-2, hi=2):
    V = standard_bimodule(A)
    basis = cochain_basis(A, V, n, degree)
    return Cochain.from_vector(A, V, n, degree, [rng.randint(lo, hi) for _ in basis], basis)


def _random_q(A, rng):
    return as_operator(A, _random_cochain(A, 1, A.group.zero(), rng))


def _family_cocycle(A, rng):
    return example37_cocycle(A, *(rng.randint(-3, 3) for _ in range(3)))


# -- star product ----------------------------------------------------------------------------

@pytest.mark.parametrize("builder", [example37, unital_color_algebra])
def test_star_with_mu_is_minus_coboundary(builder):
    A = builder()
    mu = Cochain.multiplication(A)
    rng = random.Random(3)
    for _ in range(5):
        g = _random_cochain(A, 2, A.group.zero(), rng)
        assert star(mu, g) + star(g, mu) == -coboundary(g)


def test_mu_star_mu_vanishes_on_left_symmetric_algebras(ex37, colored):
    for A in (ex37, colored):
        mu = Cochain.multiplication(A)
        assert star(mu, mu).is_zero()


def test_star_arity_checked(ex37):
    p = Cochain.linear(ex37, {X: {X: 1}})
    with pytest.raises(ValueError):
        star(p, Cochain.multiplication(ex37))


def test_family_cocycles_square_to_zero(ex37):
    for r, s, t in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -1, 3)]:
        f = example37_cocycle(ex37, r, s, t)
        assert star(f, f).is_zero()


# -- verification ----------------------------------------------------------------------------------

def test_trivial_deformation_verifies(ex37):
    assert verify_deformation(Deformation(ex37))
    zero = Cochain(ex37, standard_bimodule(ex37), 2, ex37.group.zero())
    assert verify_deformation(Deformation(ex37, [zero, zero]))


@pytest.mark.parametrize("name", ["a_lambda_t", "a_lambda_t:-1", "a_lambda_t:z4", "b_lambda"])
def test_catalog_families_verify(name):
    rep = verify_deformation(load(name).attachments["deformation"])
    assert rep.passed and rep.max_degree == 2 and rep.checked_triples == 27


def test_non_cocycle_fails_at_lambda_one(ex37):
    f = Cochain.bilinear(ex37, {(Y1, Y1): {X: 1}})
    assert not infinitesimal_cocycle_check(f)
    rep = verify_deformation(Deformation(ex37, [f]))
    assert not rep.passed
    assert rep.first_failure[0] == 1
    assert verify_deformation(Deformation(ex37, [f]), stop_at_first=True).failures == rep.failures[:1]


def test_deformation_terms_validated(ex37):
    with pytest.raises(DeformationError, match="degree 0"):
        Deformation(ex37, [Cochain.bilinear(ex37, {(X, X): {Y1: 1}}, degree=ex37.group(1))])
    with pytest.raises(DeformationError, match="2-cochain"):
        Deformation(ex37, [Cochain.linear(ex37, {X: {X: 1}})])
    with pytest.raises(DeformationError, match="different algebra"):
        Deformation(ex37, [Cochain.multiplication(load("a_alpha").algebra)])


def test_padded_equality(ex37):
    f = example37_cocycle(ex37, r=1)
    zero = f - f
    assert Deformation(ex37, [f]).padded_equal(Deformation(ex37, [f, zero]))
    assert not Deformation(ex37, [f]).padded_equal(Deformation(ex37, [zero, f]))


# -- obstructions and extensions ------------------------------------------------------------------

def test_extension_solutions_are_exactly_the_verifying_terms(ex37):
    rng = random.Random(5)
    D = Deformation(ex37, [_family_cocycle(ex37, rng)])
    rep = obstruction_and_extend(D)
    assert rep.extendable and rep.order == 2
    assert len(rep.kernel) == cohomology(ex37, None, 2, ex37.group.zero()).dim_cocycles
    assert verify_deformation(D.extended(rep.particular))
    for k in rep.kernel:
        assert verify_deformation(D.extended(rep.particular + k))
    # something outside the solution set must fail
    bad = rep.particular + Cochain.bilinear(ex37, {(Y1, Y1): {X: 1}})
    assert not verify_deformation(D.extended(bad))


def test_order_equation_sign(ex37):
    # sum f_i * f_{p-i} = +d_2(f_p) for the four-sum coboundary
    rng = random.Random(17)
    D = Deformation(ex37, [_family_cocycle(ex37, rng)])
    rep = obstruction_and_extend(D)
    assert rep.obstruction == coboundary(rep.particular)


def test_extend_to_order_three(ex37):
    D = load("b_lambda").attachments["deformation"]
    D2 = extend_deformation(D)
    assert D2.order == 2 and verify_deformation(D2)
    D3 = extend_deformation(D2)
    assert D3.order == 3 and verify_deformation(D3)


def test_extend_rejects_non_deformations(ex37):
    with pytest.raises(DeformationError):
        obstruction_and_extend(Deformation(ex37))
    f = Cochain.bilinear(ex37, {(Y1, Y1): {X: 1}})
    with pytest.raises(DeformationError, match="lambda\\^1"):
        obstruction_and_extend(Deformation(ex37, [f]))


# -- equivalences -------------------------------------------------------------------------------

def _trivial(A, order=0):
    zero = Cochain(A, standard_bimodule(A), 2, A.group.zero())
    return Deformation(A, [zero] * order)


def test_transport_by_random_q(ex37):
    rng = random.Random(23)
    for _ in range(5):
        q = _random_q(ex37, rng)
        E = transport(_trivial(ex37), EquivalenceMap(ex37, (q,)), 2)
        e1, e2 = E.term(1), E.term(2)
        assert e1 == coboundary(as_linear_cochain(q))
        for x in range(3):
            for y in range(3):
                ex, ey = {x: ONE}, {y: ONE}
                want = ex37.mul(q.apply(ex), q.apply(ey))
                for k, v in q.apply(e1.evaluate([ex, ey])).items():
                    want[k] = want.get(k, 0) - v
                want = {k: v for k, v in want.items() if v}
                assert {k: v for k, v in e2.evaluate([ex, ey]).items() if v} == want
        assert verify_deformation(E)


def test_transport_result_is_equivalent(ex37):
    rng = random.Random(29)
    D = load("b_lambda").attachments["deformation"]
    P = EquivalenceMap(ex37, (_random_q(ex37, rng), _random_q(ex37, rng)))
    E = transport(D, P, 3)
    assert verify_deformation(E)
    for p in range(4):
        assert equivalence_residual(D, E, P, p) == {}


def test_transport_round_trip_through_inverse(ex37):
    rng = random.Random(31)
    D = load("a_lambda_t:z4").attachments["deformation"]
    P = EquivalenceMap(ex37, (_random_q(ex37, rng),))
    E = transport(D, P, 3)
    back = transport(E, formal_inverse(P, 3), 3)
    assert back.padded_equal(D)


def test_formal_inverse(ex37):
    rng = random.Random(37)
    P = EquivalenceMap(ex37, (_random_q(ex37, rng), _random_q(ex37, rng)))
    Q = formal_inverse(P, 4)
    for k in range(1, 5):
        acc = GradedLinOp.zero(ex37)
        for i in range(k + 1):
            pi, qj = P.term(i), Q.term(k - i)
            if pi is not None and qj is not None:
                acc = acc + pi @ qj
        assert acc.is_zero()


def _derivations(A):
    return [as_operator(A, p) for p in cohomology(A, None, 1, A.group.zero()).cocycle_basis]


def test_degree_zero_derivations_fix_deformations_to_first_order(ex37):
    assert len(_derivations(ex37)) == 3
    for name in ("a_lambda_t", "b_lambda"):
        D = load(name).attachments["deformation"]
        for d in _derivations(ex37):
            assert transport(D, EquivalenceMap(ex37, (d,)), 1).padded_equal(D)


def test_exponential_of_derivation_fixes_trivial_deformation(ex37):
    trivial = _trivial(ex37)
    for d in _derivations(ex37):
        d2 = d @ d
        terms = (d, d2.scale(CycScalar(1) / 2), (d2 @ d).scale(CycScalar(1) / 6))
        E = transport(trivial, EquivalenceMap(ex37, terms), 3)
        assert all(E.term(k).is_zero() for k in (1, 2, 3))


def test_linear_derivation_fails_at_second_order(ex37):
    # id + lambda*d is not multiplicative at lambda^2 unless d(x)d(y) = 0
    d = GradedLinOp.diagonal(ex37, [0, -1, 1])
    assert coboundary(as_linear_cochain(d)).is_zero()
    E = transport(_trivial(ex37), EquivalenceMap(ex37, (d,)), 2)
    assert E.term(1).is_zero()
    assert E.term(2).value((Y1,), Y2) == {X: -1}


def test_infinitesimal_equivalence_examples(ex37):
    zero = Cochain(ex37, standard_bimodule(ex37), 2, ex37.group.zero())
    f = example37_cocycle(ex37, r=1)
    assert infinitesimal_equivalence(f, zero) is None
    assert infinitesimal_equivalence(f, f).is_zero()
    d = GradedLinOp.diagonal(ex37, [1, 0, 2])
    e = coboundary(as_linear_cochain(d))
    p = infinitesimal_equivalence(zero, e)
    assert coboundary(p) == e


def test_infinitesimal_equivalence_requires_cocycles(ex37):
    zero = Cochain(ex37, standard_bimodule(ex37), 2, ex37.group.zero())
    bad = Cochain.bilinear(ex37, {(Y1, Y1): {X: 1}})
    with pytest.raises(DeformationError, match="not a 2-cocycle"):
        infinitesimal_equivalence(bad, zero)
    with pytest.raises(DeformationError, match="degree 0"):
        infinitesimal_equivalence(zero, Cochain.bilinear(ex37, {(X, X): {Y1: 1}}, degree=ex37.group(1)))


@settings(max_examples=20)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 10**6))
def test_classes_match_cohomology(r, s, t, seed):
    A = example37()
    rng = random.Random(seed)
    f = example37_cocycle(A, r, s, t)
    shifted = f + coboundary(as_linear_cochain(_random_q(A, rng)))
    p = infinitesimal_equivalence(f, shifted)
    assert p is not None
    assert coboundary(p) == shifted - f
    if (r, s, t) != (0, 0, 0):
        zero = f - f
        assert infinitesimal_equivalence(zero, f) is None


def test_equivalence_map_degree_checked(ex37):
    with pytest.raises(HomogeneityError):
        EquivalenceMap(ex37, (GradedLinOp.from_images(ex37, ex37.group(1), {X: {Y1: 1}}),))
