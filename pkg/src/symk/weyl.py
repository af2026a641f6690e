"""Weyl groups W_{G_k}(A) of split tori and the quotients W_{G_k}(A)/W_{H_k}(A)."""
from __future__ import annotations

from itertools import permutations, product
from math import factorial

from . import linalg as la
from .errors import PreconditionError, UnsupportedCombination
from .group import GroupElement, InvolutionSpec, NamedInvolution
from .tori import Torus, TorusClass, local_involution


def permutation_matrix(perm, k):
    """Matrix sending e_j to +-e_perm[j], det 1; the sign sits on the last moved row."""
    n = len(perm)
    rows = [[k.zero] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = k.one
    inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
    if inversions % 2:
        last = max(i for i in range(n) if perm[i] != i)
        rows[last] = [k.neg(x) for x in rows[last]]
    return tuple(map(tuple, rows))


def weyl_group(A: Torus, k=None) -> list:
    """[(perm, representative)] for W_{G_k}(A) = S_n, representatives g w g^-1."""
    k = A.field if k is None else k
    n = A.n
    if n > 2 and not k.is_finite:
        raise UnsupportedCombination(f"symbolic Weyl groups are only handled for SL(2), not SL({n})")
    g = A.conjugator
    out = []
    for perm in sorted(permutations(range(n))):
        w = GroupElement(permutation_matrix(perm, k), k, check=False)
        out.append((perm, g * w * g.inverse()))
    return out


def normalizes(x: GroupElement, A: Torus) -> bool:
    k = A.field
    g = A.conjugator
    local = la.mat_mul(k, la.mat_mul(k, g.inverse().entries, x.entries), g.entries)
    return la.monomial_permutation(k, local) is not None


class WeylQuotient:
    def __init__(self, torus_class, order_WG, order_WH, coset_representatives, fixed_representatives):
        self.torus_class = torus_class
        self.order_WG = order_WG
        self.order_WH = order_WH
        self.quotient_order = order_WG // order_WH
        self.coset_representatives = coset_representatives
        self.fixed_representatives = fixed_representatives

    def to_json(self):
        return {
            "class": self.torus_class.to_json() if self.torus_class is not None else None,
            "wg": self.order_WG, "wh": self.order_WH, "quotient": self.quotient_order,
            "reps": [r.tolist() if r is not None else None for r in self.coset_representatives],
        }

    def __repr__(self):
        return f"WeylQuotient({self.order_WG}/{self.order_WH} = {self.quotient_order})"


def _sl2_fixed_local(m, k):
    """For inner theta' = Int(m) preserving D in SL(2): a theta'-fixed element of the
    nontrivial Weyl class, as (found, local matrix or None).

    w_t = [[0, t], [-1/t, 0]] is fixed iff m is antidiagonal [[0, a], [b, 0]] and
    t^2 = -a/b; a diagonal non-scalar m never fixes it.
    """
    if la.is_scalar(k, m):
        return True, permutation_matrix((1, 0), k)
    if la.is_diagonal(k, m):
        return False, None
    a, b = m[0][1], m[1][0]
    target = k.neg(k.div(a, b))
    if not k.is_square(target):
        return False, None
    t = k.sqrt(target)
    if t is None:
        return True, None
    return True, ((k.zero, t), (k.neg(k.inv(t)), k.zero))


def _symbolic_sl2(cls: TorusClass, theta: InvolutionSpec, k) -> WeylQuotient:
    A = cls.representative
    inner = theta.as_inner_sl2()
    if A is None:
        if cls.signature.dim_minus:
            raise PreconditionError("split-type class without a representative torus")
        # eigenframe over a larger carrier: m is diagonal and non-scalar
        fixed = {(0, 1): None}
        return WeylQuotient(cls, 2, 1, [None, None], fixed)
    g = A.conjugator
    m = local_involution(A, inner).matrix
    found, local = _sl2_fixed_local(m, k)
    fixed = {(0, 1): GroupElement.identity(2, k)}
    reps = [GroupElement.identity(2, k)]
    if found:
        fixed[(1, 0)] = g * GroupElement(local, k, check=False) * g.inverse() if local is not None else None
    else:
        reps.append(g * GroupElement(permutation_matrix((1, 0), k), k, check=False) * g.inverse())
    return WeylQuotient(cls, 2, len(fixed), reps, fixed)


def _compose(p, q):
    return tuple(p[q[j]] for j in range(len(q)))


def _exhaustive(cls: TorusClass, theta: InvolutionSpec, k) -> WeylQuotient:
    A = cls.representative
    n = A.n
    g = A.conjugator
    local = local_involution(A, theta)
    units = sorted((x for x in k.elements() if not k.is_zero(x)), key=k.encode)
    fixed = {}
    for perm in sorted(permutations(range(n))):
        w = permutation_matrix(perm, k)
        for head in product(units, repeat=n - 1):
            prod_ = k.one
            for x in head:
                prod_ = k.mul(prod_, x)
            diag = list(head) + [k.inv(prod_)]
            x = GroupElement(tuple(tuple(k.mul(diag[i], w[i][j]) for j in range(n)) for i in range(n)),
                             k, check=False)
            if local.fixes(x):
                fixed[perm] = g * x * g.inverse()
                break
    # left cosets w W_H, represented by their least permutation
    reps, covered = [], set()
    for perm in sorted(permutations(range(n))):
        if perm in covered:
            continue
        covered |= {_compose(perm, h) for h in fixed}
        w = GroupElement(permutation_matrix(perm, k), k, check=False)
        reps.append(g * w * g.inverse())
    return WeylQuotient(cls, factorial(n), len(fixed), reps, fixed)


def weyl_quotient(cls: TorusClass, theta, k=None, method: str = "auto") -> WeylQuotient:
    """W_{G_k}(A)/W_{H_k}(A) for the class representative A.

    method: "symbolic" (SL(2) square-class rule), "exhaustive" (finite fields,
    search of Z_{G_k}(A) w for theta-fixed elements) or "auto".
    """
    if isinstance(theta, NamedInvolution):
        theta = theta.spec(k)
    k = theta.field if k is None else k
    if method == "auto":
        method = "exhaustive" if k.is_finite and cls.representative is not None else "symbolic"
    if method == "symbolic":
        if theta.n != 2:
            raise UnsupportedCombination(f"symbolic Weyl quotients are only handled for SL(2), not SL({theta.n})")
        return _symbolic_sl2(cls, theta, k)
    if not k.is_finite:
        raise UnsupportedCombination("exhaustive Weyl quotients need a finite field")
    return _exhaustive(cls, theta, k)


def weyl_order_by_enumeration(A: Torus, elements) -> int:
    """|N_{G_k}(A)| / |Z_{G_k}(A)| from a full enumeration of G_k."""
    k = A.field
    g = A.conjugator
    gi = g.inverse()
    normal = central = 0
    for x in elements:
        local = la.mat_mul(k, la.mat_mul(k, gi.entries, x.entries), g.entries)
        if la.monomial_permutation(k, local) is not None:
            normal += 1
            central += la.is_diagonal(k, local)
    return normal // central
