"""The generalized complexification map phi on orbits, I-posets and orbit diagrams."""
from __future__ import annotations

from itertools import permutations

from . import linalg as la
from .errors import CriteriaDisagree, UnsupportedCombination
from .field import INFINITE, AlgClosedModel, ClassLabel
from .group import NamedInvolution, fixed_group
from .tori import TorusClass, classify_torus_classes, minus_contained, rank_krank
from .weyl import _compose, weyl_quotient


class IPoset:
    """Classes with their order; order_pairs holds the full relation (i <= j)."""

    def __init__(self, nodes, order_pairs, truncated=False):
        self.nodes = list(nodes)
        self.order_pairs = sorted(set(order_pairs))
        self.truncated = truncated

    def leq(self, i, j):
        return (i, j) in self._relation

    @property
    def _relation(self):
        return set(self.order_pairs)

    @property
    def covers(self):
        rel = self._relation
        strict = [(i, j) for i, j in rel if i != j]
        return sorted((i, j) for i, j in strict
                      if not any((i, m) in rel and (m, j) in rel and m not in (i, j)
                                 for m in range(len(self.nodes))))

    def validate(self):
        rel = self._relation
        n = len(self.nodes)
        assert all((i, i) in rel for i in range(n)), "not reflexive"
        assert all((j, i) not in rel for i, j in rel if i != j), "not antisymmetric"
        assert all((i, m) in rel for i, j in rel for j2, m in rel if j == j2), "not transitive"
        assert all(self.nodes[i].signature.dim_minus <= self.nodes[j].signature.dim_minus
                   for i, j in rel), "order does not respect signatures"
        return True


def _spec(theta, k):
    return theta.spec(k) if isinstance(theta, NamedInvolution) else theta


def build_iposet(classes, theta, k) -> IPoset:
    """[A_i] <= [A_j] iff A_i^- lies in A_j'^- for some A_j' in the H_k-class of A_j.

    Over finite fields this is decided by a containment search over the class
    members; otherwise by signature dominance (one class per signature among
    the fixed-type classes, which is all the SL(2) tables produce).
    """
    spec = _spec(theta, k)
    n = len(classes)
    pairs = [(i, i) for i in range(n)]
    search = k.is_finite and all(c.representative is not None for c in classes)
    if search:
        members = []
        H = None
        for c in classes:
            if c.members is None:
                H = fixed_group(spec) if H is None else H
                keys, tori = set(), []
                for h in H:
                    T = c.representative.conjugate(h)
                    if T.frame_key() not in keys:
                        keys.add(T.frame_key())
                        tori.append(T)
                members.append(tori)
            else:
                members.append(c.members)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if search:
                if any(minus_contained(classes[i].representative, T, spec) for T in members[j]):
                    pairs.append((i, j))
            elif classes[i].signature.dim_minus < classes[j].signature.dim_minus:
                pairs.append((i, j))
    truncated = any(c.multiplicity_context == INFINITE for c in classes)
    return IPoset(classes, pairs, truncated)


class OrbitDiagram:
    """Nodes (class index, orbit index 1..quotient); edges join replicas across covers."""

    def __init__(self, poset, quotients):
        self.poset = poset
        self.quotients = list(quotients)
        self.nodes = [(i, r) for i, q in enumerate(self.quotients) for r in range(1, q + 1)]
        self.edges = [((i, a), (j, b)) for i, j in poset.covers
                      for a in range(1, self.quotients[i] + 1) for b in range(1, self.quotients[j] + 1)]


def expand_to_orbit_diagram(poset: IPoset, theta, k) -> OrbitDiagram:
    spec = _spec(theta, k)
    return OrbitDiagram(poset, [weyl_quotient(c, spec, k).quotient_order for c in poset.nodes])


# -- closed-field codomain ------------------------------------------------------

def _eigen_multiplicities(spec):
    """(p, q) eigenvalue multiplicities of M with M^2 = c over the closure."""
    k, n = spec.field, spec.n
    tr = k.zero
    for i in range(n):
        tr = k.add(tr, spec.matrix[i][i])
    s = k.sqrt(spec.c) if k.is_square(spec.c) else None
    if s is None or k.is_zero(tr):
        if n % 2:
            raise AssertionError("odd n with traceless M")
        return n // 2, n // 2
    diff = k.div(tr, s)
    for p in range(n + 1):
        if k(2 * p - n) == diff:
            return p, n - p
    raise AssertionError("cannot read eigenvalue multiplicities")


def closed_signatures(n: int, theta: NamedInvolution, k) -> list:
    """Signatures of the theta-stable tori classes over the algebraic closure."""
    spec = theta.spec(k)
    if spec.kind == "inner":
        if la.is_scalar(k, spec.matrix):
            return [(n - 1, 0)]
        p, q = _eigen_multiplicities(spec)
        return [(n - 1 - j, j) for j in range(min(p, q), -1, -1)]
    if n > 3:
        raise UnsupportedCombination("closed-field transpose-inverse classes are pinned for n <= 3 only")
    return [(j, n - 1 - j) for j in range(n // 2 + 1)]


def _codomain(n, theta, k):
    if n == 2:
        kbar = AlgClosedModel()
        classes = classify_torus_classes(2, theta, kbar)
        quotients = [weyl_quotient(c, theta.spec(kbar), kbar) for c in classes]
        return kbar, classes, quotients
    sigs = closed_signatures(n, theta, k)
    return None, [TorusClass(s, ClassLabel("1", None), None) for s in sigs], None


# -- the report -------------------------------------------------------------------

def rank_criterion(n: int, theta: NamedInvolution, k):
    """(rank H, k-rank H, surjective by the rank test)."""
    r, kr = rank_krank(n, theta, k)
    return r, kr, r == kr


class ComplexificationReport:
    def __init__(self, n, theta, field, domain_poset, codomain_poset, class_map, orbit_map,
                 fibers, cokernel, cokernel_classes, surjective, rank_evidence,
                 domain_quotients, codomain_quotients):
        self.n, self.theta, self.field = n, theta, field
        self.domain_poset = domain_poset
        self.codomain_poset = codomain_poset
        self.class_map = class_map
        self.orbit_map = orbit_map
        self.fibers = fibers
        self.cokernel = cokernel
        self.cokernel_classes = cokernel_classes
        self.surjective = surjective
        self.rank_evidence = rank_evidence
        self.domain_quotients = domain_quotients
        self.codomain_quotients = codomain_quotients

    def to_json(self):
        def count(x):
            return "inf" if x == INFINITE else x

        dom, cod = self.domain_poset.nodes, self.codomain_poset.nodes
        return {
            "group": f"sl:{self.n}", "field": self.field.spec, "involution": self.theta.canonical,
            "surjective": self.surjective,
            "rank": list(self.rank_evidence) if self.rank_evidence else None,
            "class_map": [{"domain": dom[i].to_json(), "codomain": cod[j].to_json()}
                          for i, j in sorted(self.class_map.items())],
            "orbit_map": None if self.orbit_map is None else
            [{"domain": [i, a], "codomain": [j, b]} for (i, a), (j, b) in sorted(self.orbit_map.items())],
            "fibers": None if self.fibers is None else
            [{"codomain": [j, b], "size": count(s)} for (j, b), s in sorted(self.fibers.items())],
            "cokernel": [{"class": cod[j].to_json(), "orbit": b} for j, b in self.cokernel],
            "truncated": self.domain_poset.truncated,
        }


def _coset(perm, fixed):
    return frozenset(_compose(perm, h) for h in fixed)


def complexify(n: int, theta: NamedInvolution, k, limit: int = 4) -> ComplexificationReport:
    spec = theta.spec(k)
    if n != theta.n:
        raise UnsupportedCombination(f"involution acts on SL({theta.n}), not SL({n})")
    if n > 2 and not k.is_finite:
        raise UnsupportedCombination(f"complexification of SL({n}) over {k.spec} needs the finite-field path")
    classes = classify_torus_classes(n, theta, k, limit=limit)
    domain_poset = build_iposet(classes, spec, k)
    kbar, cod_classes, cod_wq = _codomain(n, theta, k)
    codomain_poset = build_iposet(cod_classes, theta.spec(kbar) if kbar else spec, kbar or k) \
        if kbar else IPoset(cod_classes, [(i, j) for i in range(len(cod_classes))
                                          for j in range(len(cod_classes))
                                          if i == j or cod_classes[i].signature.dim_minus
                                          < cod_classes[j].signature.dim_minus])

    class_map = {}
    for i, c in enumerate(classes):
        targets = [j for j, d in enumerate(cod_classes) if d.signature == c.signature]
        if len(targets) != 1:
            raise AssertionError(f"signature {tuple(c.signature)} matches {len(targets)} codomain classes")
        class_map[i] = targets[0]

    infinite = {j: any(classes[i].multiplicity_context == INFINITE for i in class_map if class_map[i] == j)
                for j in range(len(cod_classes))}
    orbit_map = fibers = None
    dom_q = cod_q = None
    if cod_wq is not None:
        dom_wq = [weyl_quotient(c, spec, k) for c in classes]
        dom_q = [w.quotient_order for w in dom_wq]
        cod_q = [w.quotient_order for w in cod_wq]
        orbit_map, fibers = {}, {}
        cod_cosets = []
        for w in cod_wq:
            seen, cos = set(), []
            for perm in sorted(permutations(range(n))):
                c = _coset(perm, w.fixed_representatives)
                if c not in seen:
                    seen.add(c)
                    cos.append(c)
            cod_cosets.append(cos)
        for j, cos in enumerate(cod_cosets):
            for b in range(1, len(cos) + 1):
                fibers[(j, b)] = 0
        for i, w in enumerate(dom_wq):
            j = class_map[i]
            seen = []
            for perm in sorted(permutations(range(n))):
                c = _coset(perm, w.fixed_representatives)
                if c in seen:
                    continue
                seen.append(c)
                b = next(b for b, cc in enumerate(cod_cosets[j], 1) if perm in cc)
                orbit_map[(i, len(seen))] = (j, b)
                fibers[(j, b)] += 1
        for (j, b) in fibers:
            if infinite[j] and fibers[(j, b)]:
                fibers[(j, b)] = INFINITE
        cokernel = sorted(key for key, s in fibers.items() if s == 0)
    else:
        hit = set(class_map.values())
        cokernel = [(j, None) for j in range(len(cod_classes)) if j not in hit]
    cokernel_classes = sorted({j for j, _ in cokernel})
    by_cokernel = not cokernel

    try:
        r, kr, by_rank = rank_criterion(n, theta, k)
        evidence = (r, kr)
    except UnsupportedCombination:
        by_rank, evidence = None, None
    if by_rank is not None and by_rank != by_cokernel:
        raise CriteriaDisagree(f"cokernel says surjective={by_cokernel}, rank test says {by_rank}")
    return ComplexificationReport(n, theta, k, domain_poset, codomain_poset, class_map, orbit_map,
                                  fibers, cokernel, cokernel_classes, by_cokernel, evidence, dom_q, cod_q)


def surjective_by_rank(n: int, theta: NamedInvolution, k) -> bool:
    """Rank test alone; covers the configurations where orbits are not enumerable."""
    return rank_criterion(n, theta, k)[2]


__all__ = ["IPoset", "OrbitDiagram", "ComplexificationReport", "build_iposet",
           "expand_to_orbit_diagram", "complexify", "closed_signatures", "rank_criterion",
           "surjective_by_rank"]
