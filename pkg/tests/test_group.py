import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symk.errors import BudgetExceeded
from symk.field import Finite, Rational, RealModel
from symk.group import (GroupElement, InvolutionSpec, NamedInvolution, apply_involution, borel_generators,
                        conjugate_involution, enumerate_group, fixed_group, generating_set, is_fixed,
                        sl_order, subgroup_closure, tau)

Q = Rational()
small = st.integers(-6, 6)


@st.composite
def sl2_rational(draw):
    # upper * lower * diagonal keeps det 1 and covers a dense piece of SL(2, Q)
    a, b = draw(small), draw(small)
    d = Fraction(draw(st.integers(1, 5)), draw(st.integers(1, 5))) * draw(st.sampled_from([1, -1]))
    u = GroupElement([[1, a], [0, 1]], Q)
    lo = GroupElement([[1, 0], [b, 1]], Q)
    t = GroupElement([[d, 0], [0, 1 / d]], Q)
    return u * lo * t


def test_group_element_checks_det():
    with pytest.raises(ValueError):
        GroupElement([[1, 1], [0, 2]], Q)
    g = GroupElement([[2, 1], [1, 1]], Q)
    assert g * g.inverse() == GroupElement.identity(2, Q)


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5), (2, 7), (2, 9), (3, 2 + 1)])
def test_enumeration_matches_order_formula(n, q):
    els = list(enumerate_group(n, Finite(q)))
    assert len(els) == sl_order(n, q)
    assert len(set(els)) == len(els)


def test_enumeration_respects_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_group(3, Finite(5), budget=1000))


def test_sl_order_small_values():
    assert sl_order(2, 3) == 24
    assert sl_order(2, 5) == 120
    assert sl_order(3, 2) == 168


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_fixed_group_orders(q):
    # antidiag: a^2 - b^2 = 1 has q - 1 points; symplectic: a^2 + b^2 = 1 has q - (-1|q)
    k = Finite(q)
    legendre = 1 if q % 4 == 1 else -1
    assert len(fixed_group(NamedInvolution.antidiag().spec(k))) == q - 1
    assert len(fixed_group(NamedInvolution.symplectic().spec(k))) == q - legendre


INVOLUTIONS = [NamedInvolution.antidiag(), NamedInvolution.symplectic(), NamedInvolution.transpose_inverse(2)]


@pytest.mark.parametrize("inv", INVOLUTIONS, ids=str)
def test_exhaustive_f3_involution_laws(inv):
    k = Finite(3)
    theta = inv.spec(k)
    H = fixed_group(theta)
    for x in enumerate_group(2, k):
        assert theta.apply(theta.apply(x)) == x
        t = tau(theta, x)
        assert theta.apply(t) == t.inverse()
        for h in H:
            assert tau(theta, x * h) == t


@pytest.mark.parametrize("inv", INVOLUTIONS + [NamedInvolution.inner([[1, 0], [0, -1]])], ids=str)
@given(x=sl2_rational(), y=sl2_rational())
@settings(max_examples=40)
def test_rational_involution_laws(inv, x, y):
    theta = inv.spec(Q)
    assert theta.apply(theta.apply(x)) == x
    assert theta.apply(x * y) == theta.apply(x) * theta.apply(y)
    t = tau(theta, x)
    assert theta.apply(t) == t.inverse()


def test_conjugate_involution_is_involution_in_new_coordinates():
    k = Finite(5)
    theta = NamedInvolution.antidiag().spec(k)
    rng = random.Random(1)
    G = list(enumerate_group(2, k))
    for g in rng.sample(G, 10):
        local = conjugate_involution(theta, g)
        for x in rng.sample(G, 10):
            # local(x) = g^-1 theta(g x g^-1) g
            assert local.apply(x) == g.inverse() * theta.apply(g * x * g.inverse()) * g


def test_is_fixed_and_apply_agree():
    theta = NamedInvolution.antidiag().spec(Q)
    h = GroupElement([[Fraction(5, 4), Fraction(3, 4)], [Fraction(3, 4), Fraction(5, 4)]], Q)
    assert is_fixed(theta, h)
    assert apply_involution(theta, h) == h


def test_named_matrices():
    assert NamedInvolution.block_j(4, 1).matrix() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert NamedInvolution.lx(2, 3).matrix() == [[0, 1, 0, 0], [3, 0, 0, 0], [0, 0, 0, 1], [0, 0, 3, 0]]
    with pytest.raises(ValueError):
        NamedInvolution.block_j(3, 2)
    with pytest.raises(ValueError):
        NamedInvolution.lx(1, 0)


def test_inner_requires_involutive_matrix():
    with pytest.raises(ValueError):
        InvolutionSpec("inner", [[1, 1], [0, 1]], RealModel())


@pytest.mark.parametrize("q", [3, 5])
def test_borel_and_h_generate(q):
    k = Finite(q)
    B = subgroup_closure(borel_generators(2, k), 2, k)
    assert len(B) == q * (q - 1)
    H = fixed_group(NamedInvolution.antidiag().spec(k))
    gens = generating_set(H, 2, k)
    assert subgroup_closure(gens, 2, k) == set(H)
