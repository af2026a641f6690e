from fractions import Fraction

import pytest

from symk.errors import UnsupportedCombination
from symk.field import INFINITE, AlgClosedModel, Finite, PadicModel, QuadExt, Rational, RealModel
from symk.group import GroupElement, NamedInvolution, fixed_group
from symk.tori import (Torus, classify_torus_classes, decompose, is_standard_pair, is_theta_k_split,
                       is_theta_stable, minus_contained, rank_krank, subtorus_points, theta_stable_tori)

AD, SP = NamedInvolution.antidiag(), NamedInvolution.symplectic()


def brute_class_count(theta):
    # independent oracle: H-orbits on the set of theta-stable split tori, by frame keys
    H = fixed_group(theta)
    remaining = {T.frame_key(): T for T in theta_stable_tori(theta)}
    orbits = 0
    while remaining:
        _, T = remaining.popitem()
        orbits += 1
        for h in H:
            remaining.pop(T.conjugate(h).frame_key(), None)
    return orbits


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
@pytest.mark.parametrize("inv", [AD, SP], ids=str)
def test_table_matches_exhaustive_and_brute(inv, q):
    k = Finite(q)
    table = classify_torus_classes(2, inv, k, method="table")
    exh = classify_torus_classes(2, inv, k, method="exhaustive")
    assert table == exh
    assert len(table) == brute_class_count(inv.spec(k))


@pytest.mark.parametrize("inv,q,count", [(NamedInvolution.block_j(3, 1), 3, None),
                                         (NamedInvolution.transpose_inverse(3), 3, None)], ids=str)
def test_sl3_exhaustive_matches_brute(inv, q, count):
    k = Finite(q)
    classes = classify_torus_classes(3, inv, k)
    assert len(classes) == brute_class_count(inv.spec(k))


@pytest.mark.parametrize("k,inv,shape", [
    (RealModel(), AD, [(0, 1), (1, 0)]),
    (RealModel(), SP, [(0, 1)]),
    (PadicModel(5), AD, [(0, 1)] * 4 + [(1, 0)]),
    (AlgClosedModel(), AD, [(0, 1), (1, 0)]),
    (QuadExt(Rational(), -1), SP, None),
], ids=lambda x: getattr(x, "spec", str(x)))
def test_symbolic_tables(k, inv, shape):
    classes = classify_torus_classes(2, inv, k)
    if shape is not None:
        assert [tuple(c.signature) for c in classes] == shape
    for c in classes:
        if c.representative is not None:
            spec = inv.spec(k)
            assert is_theta_stable(c.representative, spec)
            assert tuple(decompose(c.representative, spec)[:2]) == tuple(c.signature)


def test_rational_table_is_truncated_infinite():
    classes = classify_torus_classes(2, AD, Rational(), limit=4)
    split = [c for c in classes if c.signature == (0, 1)]
    assert len(split) == 4
    assert all(c.multiplicity_context == INFINITE for c in split)
    assert len({c.invariant.name for c in split}) == 4


def test_padic_three_mod_four_refused():
    with pytest.raises(UnsupportedCombination):
        classify_torus_classes(2, AD, PadicModel(7))


@pytest.mark.parametrize("k", [Finite(3), Finite(5), Finite(7)], ids=str)
@pytest.mark.parametrize("inv", [AD, SP, NamedInvolution.transpose_inverse(2)], ids=str)
def test_dims_add_up(k, inv):
    theta = inv.spec(k)
    for T in theta_stable_tori(theta):
        d = decompose(T, theta)
        assert d.dim_plus + d.dim_minus == 1


@pytest.mark.parametrize("inv", [NamedInvolution.block_j(3, 1), NamedInvolution.transpose_inverse(3)], ids=str)
def test_dims_add_up_sl3(inv):
    theta = inv.spec(Finite(3))
    for T in theta_stable_tori(theta):
        d = decompose(T, theta)
        assert d.dim_plus + d.dim_minus == 2


@pytest.mark.parametrize("inv", [AD, SP], ids=str)
def test_plus_minus_overlap_is_two_torsion(inv):
    k = Finite(5)
    theta = inv.spec(k)
    one = GroupElement.identity(2, k)
    for T in theta_stable_tori(theta):
        d = decompose(T, theta)
        plus, minus = subtorus_points(T, d.plus), subtorus_points(T, d.minus)
        for x in plus & minus:
            assert x * x == one
        for x in plus:
            assert theta.apply(x) == x
        for x in minus:
            assert theta.apply(x) == x.inverse()


def test_diagonal_torus_under_antidiag_is_split():
    k = RealModel()
    theta = AD.spec(k)
    T = Torus.diagonal(2, k)
    assert is_theta_stable(T, theta)
    assert is_theta_k_split(T, theta)


def test_from_frame_spans_given_lines():
    k = Rational()
    T = Torus.from_frame([[1, 1], [1, -1]], k)
    theta = AD.spec(k)
    assert decompose(T, theta).dim_plus == 1
    assert T.contains(GroupElement([[Fraction(5, 4), Fraction(3, 4)], [Fraction(3, 4), Fraction(5, 4)]], k))


def test_standard_pair_relation():
    k = Rational()
    theta = AD.spec(k)
    A = Torus.diagonal(2, k)
    S = Torus.from_frame([[1, 1], [1, -1]], k)
    assert minus_contained(S, A, theta)
    assert not minus_contained(A, S, theta)
    assert is_standard_pair(S, A, theta)


def test_rank_krank_values():
    R = RealModel()
    assert rank_krank(2, AD, R) == (1, 1)
    assert rank_krank(2, SP, R) == (1, 0)
    assert rank_krank(4, NamedInvolution.lx(2, -1), R) == (3, 1)
    assert rank_krank(3, NamedInvolution.transpose_inverse(3), R) == (1, 0)
    assert rank_krank(3, NamedInvolution.transpose_inverse(3), AlgClosedModel()) == (1, 1)
