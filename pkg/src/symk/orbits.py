"""Counting B_k-orbits on G_k/H_k: the Weyl-quotient formula and finite-field oracles."""
from __future__ import annotations

from .errors import PreconditionError
from .field import INFINITE, Finite
from .group import (GroupElement, InvolutionSpec, NamedInvolution, borel_generators,
                    enumerate_group, fixed_group, generating_set, sl_order, tau)
from .tori import Torus, classify_torus_classes
from .weyl import normalizes, weyl_quotient

IWASAWA_NOTE = "single orbit: G_k = B_k H_k"


class OrbitCount:
    def __init__(self, per_class, infinite=False):
        self.per_class = per_class
        self.total = INFINITE if infinite else sum(q for _, q in per_class)

    @property
    def notes(self):
        return [IWASAWA_NOTE] if self.total == 1 else []

    def to_json(self):
        return {
            "total": "inf" if self.total == INFINITE else self.total,
            "classes": [dict(c.to_json(), quotient=q) for c, q in self.per_class],
            "notes": self.notes,
        }


def orbit_count(n: int, theta: NamedInvolution, k, method: str = "auto", budget=None) -> OrbitCount:
    """Sum of |W_{G_k}(A_i)/W_{H_k}(A_i)| over the classes of theta-stable tori."""
    classes = classify_torus_classes(n, theta, k, method=method, budget=budget)
    spec = theta.spec(k) if isinstance(theta, NamedInvolution) else theta
    per_class = [(c, weyl_quotient(c, spec, k).quotient_order) for c in classes]
    infinite = any(c.multiplicity_context == INFINITE for c in classes)
    return OrbitCount(per_class, infinite)


class DoubleCosetTable:
    def __init__(self, q, n, cosets, total_size_check, members=None):
        self.q, self.n = q, n
        self.cosets = cosets
        self.total_size_check = total_size_check
        self.members = members

    @property
    def count(self):
        return len(self.cosets)

    def to_json(self):
        return {"q": self.q, "n": self.n, "count": self.count,
                "cosets": [{"rep": g.tolist(), "size": s} for g, s in self.cosets],
                "order": self.total_size_check}


def _spec(theta, k):
    return theta.spec(k) if isinstance(theta, NamedInvolution) else theta


def _orbits(elements, left, right, keep):
    """Orbits of <left> x <right> acting by x -> l x r, seeded in the given order."""
    seen, cosets, members = set(), [], []
    for g in elements:
        if g in seen:
            continue
        seen.add(g)
        orbit, frontier = [g], [g]
        while frontier:
            nxt = []
            for x in frontier:
                for y in [b * x for b in left] + [x * h for h in right]:
                    if y not in seen:
                        seen.add(y)
                        orbit.append(y)
                        nxt.append(y)
            frontier = nxt
        cosets.append((g, len(orbit)))
        if keep:
            members.append(frozenset(orbit))
    return cosets, (members if keep else None)


def enumerate_double_cosets(n: int, theta, q, budget=None, borel_conjugator=None,
                            keep_members=False) -> DoubleCosetTable:
    """Partition SL(n, F_q) into B g H double cosets by breadth-first closure.

    Elements are seeded in lexicographic order, so the first element of each
    coset is its least element.
    """
    k = Finite(q) if isinstance(q, int) else q
    spec = _spec(theta, k)
    if spec.n != n:
        raise PreconditionError(f"involution acts on SL({spec.n}), not SL({n})")
    elements = list(enumerate_group(n, k, budget))
    H = fixed_group(spec, budget)
    h_gens = generating_set(H, n, k)
    b_gens = borel_generators(n, k)
    if borel_conjugator is not None:
        ginv = borel_conjugator.inverse()
        b_gens = [borel_conjugator * b * ginv for b in b_gens]
    cosets, members = _orbits(elements, b_gens, h_gens, keep_members)
    size = len(elements)
    assert sum(s for _, s in cosets) == size == sl_order(n, len(k.elements()))
    return DoubleCosetTable(len(k.elements()), n, cosets, size, members)


def vk_membership(x: GroupElement, A: Torus, theta: InvolutionSpec) -> bool:
    """x in V_k, i.e. tau(x) normalizes A."""
    return normalizes(tau(theta, x), A)


def vk_orbits(n: int, theta, q, A: Torus | None = None, budget=None):
    """Z_{G_k}(A) x H_k orbits on V_k, as (representative, size) pairs."""
    k = Finite(q) if isinstance(q, int) else q
    spec = _spec(theta, k)
    A = Torus.diagonal(n, k) if A is None else A
    V = [x for x in enumerate_group(n, k, budget) if vk_membership(x, A, spec)]
    z_gens = A.generators()
    H = fixed_group(spec, budget)
    h_gens = generating_set(H, n, k)
    cosets, _ = _orbits(V, z_gens, h_gens, False)
    return cosets
