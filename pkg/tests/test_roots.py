from fractions import Fraction

import pytest

from symk.errors import PreconditionError, UnsupportedCombination
from symk.field import AlgClosedModel, Finite, PadicModel, QuadExt, Rational, RealModel
from symk.group import NamedInvolution
from symk.roots import (Root, cayley_matrix, cayley_transform, flip_chain, is_theta_k_singular,
                        positive_roots, restricted_involution, root_type, roots, strongly_orthogonal,
                        theta_on_root)
from symk.tori import Torus, decompose, is_theta_k_split

AD, SP = NamedInvolution.antidiag(), NamedInvolution.symplectic()
MODELS = [RealModel(), Rational(), PadicModel(5), AlgClosedModel(), QuadExt(Rational(), -1),
          Finite(3), Finite(5), Finite(7), Finite(9)]


def test_root_system_sizes():
    for n in range(2, 6):
        assert len(roots(n)) == n * (n - 1)
        assert len(positive_roots(n)) == n * (n - 1) // 2


def test_strong_orthogonality():
    a, b, c = Root.of(0, 1, 4), Root.of(2, 3, 4), Root.of(1, 2, 4)
    assert strongly_orthogonal(a, b)
    assert not strongly_orthogonal(a, c)
    assert repr(a) == "e1-e2"
    assert -a == Root.of(1, 0, 4)


def test_anti_identity_on_sl3_swaps_outer_coordinates():
    theta = NamedInvolution.inner([[0, 0, 1], [0, 1, 0], [1, 0, 0]]).spec(Rational())
    alpha = Root.of(0, 1, 3)
    assert theta_on_root(theta, alpha) == Root.of(2, 1, 3)
    assert root_type(theta, alpha) == "Complex"


def test_root_types_for_diagonal_torus():
    k = Rational()
    assert root_type(AD.spec(k), Root.of(0, 1, 2)) == "Real"
    assert root_type(NamedInvolution.inner([[1, 0], [0, -1]]).spec(k), Root.of(0, 1, 2)) == "Imaginary"
    ti = NamedInvolution.transpose_inverse(2).spec(k)
    assert root_type(ti, Root.of(0, 1, 2)) == "Real"
    bj = NamedInvolution.block_j(3, 1).spec(k)
    # J swaps e1 and e2 and fixes e3: e1-e3 goes to e2-e3
    assert theta_on_root(bj, Root.of(0, 2, 3)) == Root.of(1, 2, 3)
    assert root_type(bj, Root.of(0, 2, 3)) == "Complex"
    with pytest.raises(UnsupportedCombination):
        restricted_involution(bj, Root.of(0, 2, 3))


@pytest.mark.parametrize("k,ad,sp", [
    (RealModel(), True, False), (Finite(5), True, True), (Finite(3), True, False),
    (Rational(), True, False), (QuadExt(Rational(), -1), True, True), (AlgClosedModel(), True, True),
], ids=lambda x: getattr(x, "spec", str(x)))
def test_singularity(k, ad, sp):
    alpha = Root.of(0, 1, 2)
    assert is_theta_k_singular(alpha, AD, k) == ad
    assert is_theta_k_singular(alpha, SP, k) == sp


def test_cayley_matrix_det_one():
    k = Rational()
    C = cayley_matrix(k, 2, 0, 1)
    assert C.entries == ((1, Fraction(-1, 2)), (1, Fraction(1, 2)))


@pytest.mark.parametrize("k", MODELS, ids=str)
def test_cayley_output_is_split_on_generators(k):
    theta = AD.spec(k)
    # the eigenframe of antidiag is a theta-fixed torus
    S = Torus.from_frame([[k.one, k.one], [k.one, k.neg(k.one)]], k)
    assert decompose(S, theta).dim_plus == 1
    T = cayley_transform(S, Root.of(0, 1, 2), theta)
    assert is_theta_k_split(T, theta)
    for x in T.generators():
        assert theta.apply(x) == x.inverse()


def test_cayley_precondition():
    k = Rational()
    theta = AD.spec(k)
    with pytest.raises(PreconditionError):
        cayley_transform(Torus.diagonal(2, k), Root.of(0, 1, 2), theta)


def test_flip_chain_sl4():
    k = Rational()
    inv = NamedInvolution.block_j(4, 2)
    theta = inv.spec(k)
    S = Torus.from_frame([[k(x) for x in v] for v in ([1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [1, 0, 0, -1])], k)
    psi = [Root.of(0, 3, 4), Root.of(1, 2, 4)]
    assert all(root_type(theta, a, S) == "Imaginary" for a in psi)
    T, history = flip_chain(S, psi, theta)
    assert history == [0, 1, 2]


def test_flip_chain_rejects_non_orthogonal():
    k = Rational()
    theta = NamedInvolution.block_j(4, 2).spec(k)
    with pytest.raises(PreconditionError):
        flip_chain(Torus.diagonal(4, k), [Root.of(0, 1, 4), Root.of(1, 2, 4)], theta)
