"""Type-A roots of a theta-stable split torus: theta-types, singularity, Cayley flips."""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .errors import PreconditionError, UnsupportedCombination
from .group import GroupElement, InvolutionSpec, NamedInvolution, primitive_element
from .tori import Torus, act_on_cocharacter, decompose, lattice_action, local_involution


class Root:
    """e_i - e_j in the character lattice of a rank-n torus."""

    __slots__ = ("vector",)

    def __init__(self, vector):
        vector = tuple(int(x) for x in vector)
        if sorted(x for x in vector if x) != [-1, 1]:
            raise ValueError(f"{vector} is not a type-A root")
        self.vector = vector

    @classmethod
    def of(cls, i: int, j: int, n: int) -> "Root":
        """e_i - e_j, 0-based."""
        if i == j:
            raise ValueError("a root needs i != j")
        return cls(tuple(1 if a == i else -1 if a == j else 0 for a in range(n)))

    @property
    def n(self):
        return len(self.vector)

    @property
    def indices(self):
        return self.vector.index(1), self.vector.index(-1)

    def __neg__(self):
        return Root(tuple(-x for x in self.vector))

    def __eq__(self, other):
        return isinstance(other, Root) and self.vector == other.vector

    def __hash__(self):
        return hash(self.vector)

    def __repr__(self):
        i, j = self.indices
        return f"e{i + 1}-e{j + 1}"


def roots(n: int) -> list:
    return [Root.of(i, j, n) for i in range(n) for j in range(n) if i != j]


def positive_roots(n: int) -> list:
    return [Root.of(i, j, n) for i in range(n) for j in range(i + 1, n)]


def is_root(vector) -> bool:
    return sorted(x for x in vector if x) == [-1, 1]


def inner_product(a, b) -> int:
    return sum(x * y for x, y in zip(a.vector, b.vector))


def strongly_orthogonal(a: Root, b: Root) -> bool:
    if inner_product(a, b) != 0:
        return False
    s = tuple(x + y for x, y in zip(a.vector, b.vector))
    d = tuple(x - y for x, y in zip(a.vector, b.vector))
    return not is_root(s) and not is_root(d)


def _torus(T, theta):
    return Torus.diagonal(theta.n, theta.field) if T is None else T


def theta_on_root(theta: InvolutionSpec, alpha: Root, T: Torus | None = None) -> Root:
    """Image of alpha under the action of theta on the characters of T.

    The action on characters is given by the same signed permutation as on
    cocharacters because the permutation is an involution.
    """
    T = _torus(T, theta)
    return Root(act_on_cocharacter(lattice_action(T, theta), alpha.vector))


def root_type(theta: InvolutionSpec, alpha: Root, T: Torus | None = None) -> str:
    image = theta_on_root(theta, alpha, T)
    if image == alpha:
        return "Imaginary"
    if image == -alpha:
        return "Real"
    return "Complex"


def restricted_involution(theta: InvolutionSpec, alpha: Root, T: Torus | None = None) -> InvolutionSpec:
    """theta on [G_alpha, G_alpha] = SL(2) in coordinates (i, j) of T, as Int(r)."""
    T = _torus(T, theta)
    kind = root_type(theta, alpha, T)
    if kind == "Complex":
        raise UnsupportedCombination(f"theta moves {alpha} off its own rank-one subgroup")
    k = theta.field
    m = local_involution(T, theta)
    i, j = sorted(alpha.indices)
    r = ((m.matrix[i][i], m.matrix[i][j]), (m.matrix[j][i], m.matrix[j][j]))
    if m.kind == "outer":
        r = la.mat_mul(k, r, la.coerce(k, ((0, 1), (-1, 0))))
    return InvolutionSpec("inner", r, k, raw=True)


def is_theta_k_singular(alpha: Root, theta, k=None, T: Torus | None = None) -> bool:
    """theta restricted to [G_alpha, G_alpha] is k-isomorphic to Int(antidiag).

    Int(r) with r^2 = c' is isomorphic to Int([[0,1],[1,0]]) exactly when r is
    not scalar and c' is a square.
    """
    if isinstance(theta, NamedInvolution):
        theta = theta.spec(k)
    r = restricted_involution(theta, alpha, T)
    kk = theta.field
    return not la.is_scalar(kk, r.matrix) and kk.is_square(r.c)


def cayley_matrix(k, n: int, i: int, j: int):
    """[[1, -1/2], [1, 1/2]] in rows/columns (i, j), identity elsewhere."""
    rows = [[k.one if a == b else k.zero for b in range(n)] for a in range(n)]
    rows[i][j] = k(Fraction(-1, 2))
    rows[j][i] = k.one
    rows[j][j] = k(Fraction(1, 2))
    return GroupElement(tuple(map(tuple, rows)), k, check=False)


def _inverts_coroot(T: Torus, theta: InvolutionSpec, alpha: Root) -> bool:
    k = T.field
    s = primitive_element(k) if k.is_finite else k(2)
    x = T.cocharacter(alpha.vector, s)
    return theta.apply(x) == x.inverse()


def cayley_transform(S: Torus, alpha: Root, theta: InvolutionSpec) -> Torus:
    """Conjugate S by the Cayley element in the rank-one subgroup of alpha.

    alpha must be an imaginary root of S whose restricted involution is not
    trivial; the alpha-coroot of the output is inverted by theta, and the
    complementary coordinates are left alone.
    """
    if root_type(theta, alpha, S) != "Imaginary":
        raise PreconditionError(f"{alpha} is not fixed by theta on this torus")
    r = restricted_involution(theta, alpha, S)
    k = theta.field
    if la.is_scalar(k, r.matrix):
        raise PreconditionError(f"theta is trivial on the rank-one subgroup of {alpha}")
    i, j = sorted(alpha.indices)
    out = Torus(S.conjugator * cayley_matrix(k, S.n, i, j))
    if not _inverts_coroot(out, theta, alpha):
        raise AssertionError("Cayley transform did not produce a theta-split coroot")
    return out


def flip_chain(S: Torus, psi, theta, k=None):
    """Successive Cayley transforms along strongly orthogonal singular roots.

    Returns (torus, dim_minus history); each flip raises dim T^- by one.
    """
    if isinstance(theta, NamedInvolution):
        theta = theta.spec(k)
    psi = list(psi)
    for a in range(len(psi)):
        for b in range(a + 1, len(psi)):
            if not strongly_orthogonal(psi[a], psi[b]):
                raise PreconditionError(f"{psi[a]} and {psi[b]} are not strongly orthogonal")
    history = [decompose(S, theta).dim_minus]
    T = S
    for alpha in psi:
        if not is_theta_k_singular(alpha, theta, T=T):
            raise PreconditionError(f"{alpha} is not (theta, k)-singular")
        T = cayley_transform(T, alpha, theta)
        history.append(decompose(T, theta).dim_minus)
        if history[-1] != history[-2] + 1:
            raise AssertionError(f"flip along {alpha} changed dim T^- by {history[-1] - history[-2]}")
    return T, history
