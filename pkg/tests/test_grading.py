import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lscolor.exactnum import ONE, CycScalar
from lscolor.grading import AbelianGroup, Bicharacter, eps_eval, validate_bicharacter

z3, z4, z5 = CycScalar.zeta(3), CycScalar.zeta(4), CycScalar.zeta(5)


def test_group_elements_reduce():
    G = AbelianGroup([2, 0, 3])
    g = G(3, -4, 7)
    assert g.exponents == (1, -4, 1)
    assert g + G(1, 4, 2) == G.zero()
    assert -G(1, 0, 1) == G(1, 0, 2)
    assert 3 * G(1, 1, 1) == G(1, 3, 0)
    assert str(G(1, 2, 0)) == "1,2,0"


@pytest.mark.parametrize("orders", [[1], [-2], [2, 1]])
def test_group_rejects_bad_orders(orders):
    with pytest.raises(ValueError):
        AbelianGroup(orders)


def test_element_rank_mismatch():
    with pytest.raises(ValueError):
        AbelianGroup([2, 2])(1)


def test_elements_of_finite_group():
    G = AbelianGroup([2, 3])
    assert len(G.elements()) == 6
    with pytest.raises(ValueError):
        AbelianGroup([0]).elements()


def test_super_sign_valid():
    assert validate_bicharacter(Bicharacter.super_sign())


def test_order_violation_reported():
    rep = validate_bicharacter(Bicharacter(AbelianGroup([2]), [[z4]]))
    assert not rep.valid
    kinds = {v[0] for v in rep.violations}
    assert "order" in kinds


def test_z4_with_primitive_root_is_not_skew():
    # eps(g,g) = z4 squares to -1, so eps(g,g) eps(g,g) != 1
    rep = validate_bicharacter(Bicharacter(AbelianGroup([4]), [[z4]]))
    assert not rep.valid
    assert rep.violations[0][0] == "skew-symmetry"
    assert validate_bicharacter(Bicharacter(AbelianGroup([4]), [[-1]]))


def test_zero_entry_reported():
    rep = validate_bicharacter(Bicharacter(AbelianGroup([0]), [[0]]))
    assert rep.violations[0][0] == "nonzero"


def test_eps_examples():
    G = AbelianGroup([5])
    b = Bicharacter(G, [[z5]])
    assert b(G.zero(), G(3)) == ONE
    assert eps_eval(b, G(2), G(3)) == z5 ** 6 == z5
    s = Bicharacter.super_sign()
    Z2 = s.group
    assert s(Z2(1), Z2(1)) == -1


def _colored():
    G = AbelianGroup([3, 3, 0])
    table = [[1, z3, 1], [z3 ** -1, 1, z3], [1, z3 ** -1, -1]]
    return G, Bicharacter(G, table)


def test_colored_table_is_valid():
    assert validate_bicharacter(_colored()[1])


elements = st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))


@given(elements, elements, elements)
def test_bicharacter_laws(a, c, d):
    G, b = _colored()
    a, c, d = G(*a), G(*c), G(*d)
    assert b(a, c) * b(c, a) == ONE
    assert b(a, c + d) == b(a, c) * b(a, d)
    assert b(a + d, c) == b(a, c) * b(d, c)
    assert b(a, a) in (ONE, -ONE)


def test_self_values_exhaustive_on_finite_group():
    G = AbelianGroup([3, 3])
    b = Bicharacter(G, [[1, z3], [z3 ** -1, 1]])
    for g in G.elements():
        assert b(g, g) in (ONE, -ONE)
    for g, h in itertools.product(G.elements(), repeat=2):
        assert b(g, h) * b(h, g) == ONE
