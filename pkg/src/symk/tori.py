"""theta-stable maximal k-split tori of SL(n).

A torus is stored as a conjugator g, standing for g D g^-1 with D the diagonal
torus; equivalently by the frame of lines spanned by the columns of g.  If
m is the matrix of the involution transported by g, the torus is theta-stable
exactly when m is monomial, and the permutation of m is how theta acts on
the cocharacter lattice Y = {v in Z^n : sum v = 0}.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import NamedTuple

from . import linalg as la
from .errors import NotThetaStable, PreconditionError, UnsupportedCombination
from .field import (INFINITE, AlgClosedModel, ClassLabel, FieldModel, PadicModel,
                    QuadExt, RealModel, _root_kind)
from .group import (GroupElement, InvolutionSpec, NamedInvolution, conjugate_involution,
                    fixed_group, primitive_element)


class Torus:
    __slots__ = ("conjugator",)

    def __init__(self, conjugator: GroupElement):
        self.conjugator = conjugator

    @classmethod
    def diagonal(cls, n: int, k: FieldModel) -> "Torus":
        return cls(GroupElement.identity(n, k))

    @classmethod
    def from_frame(cls, vectors, k: FieldModel) -> "Torus":
        """Torus whose eigenlines are spanned by the given vectors."""
        cols = la.transpose(vectors)
        d = la.det(k, cols)
        if k.is_zero(d):
            raise ValueError("frame vectors are dependent")
        di = k.inv(d)
        cols = tuple((k.mul(row[0], di),) + tuple(row[1:]) for row in cols)
        return cls(GroupElement(cols, k, check=False))

    @property
    def field(self):
        return self.conjugator.field

    @property
    def n(self):
        return self.conjugator.n

    def columns(self):
        return la.transpose(self.conjugator.entries)

    def frame_key(self) -> tuple:
        k = self.field
        lines = [tuple(c for x in la.normalize_line(k, v) for c in k.encode(x)) for v in self.columns()]
        return tuple(sorted(lines))

    def element(self, diag) -> GroupElement:
        k = self.field
        n = self.n
        d = tuple(tuple(diag[i] if i == j else k.zero for j in range(n)) for i in range(n))
        g = self.conjugator
        return GroupElement(la.mat_mul(k, la.mat_mul(k, g.entries, d), g.inverse().entries), k, check=False)

    def cocharacter(self, v, t) -> GroupElement:
        k = self.field
        return self.element([k.pow(t, e) for e in v])

    def generators(self) -> list:
        """One element per basis cocharacter e_i - e_n, at a fixed parameter."""
        k = self.field
        t = primitive_element(k) if k.is_finite else k(2)
        n = self.n
        basis = [tuple(1 if j == i else -1 if j == n - 1 else 0 for j in range(n)) for i in range(n - 1)]
        return [self.cocharacter(v, t) for v in basis]

    def contains(self, x: GroupElement) -> bool:
        k = self.field
        g = self.conjugator
        return la.is_diagonal(k, la.mat_mul(k, la.mat_mul(k, g.inverse().entries, x.entries), g.entries))

    def conjugate(self, h: GroupElement) -> "Torus":
        return Torus(h * self.conjugator)

    def __eq__(self, other):
        return isinstance(other, Torus) and self.field == other.field and self.frame_key() == other.frame_key()

    def __hash__(self):
        return hash(self.frame_key())

    def __repr__(self):
        return f"Torus({self.conjugator.tolist()})"


class TorusSignature(NamedTuple):
    dim_plus: int
    dim_minus: int


class Decomposition(NamedTuple):
    dim_plus: int
    dim_minus: int
    plus: list
    minus: list


class TorusClass:
    """An H_k-conjugacy class; equality is on (signature, invariant name)."""

    def __init__(self, signature, invariant: ClassLabel, representative=None,
                 multiplicity_context=1, size=None, members=None):
        self.signature = TorusSignature(*signature)
        self.invariant = invariant
        self.representative = representative
        self.multiplicity_context = multiplicity_context
        self.size = size
        self.members = members

    @property
    def split_type(self) -> bool:
        return self.signature.dim_plus == 0

    def _key(self):
        return (self.signature, self.invariant.name)

    def __eq__(self, other):
        return isinstance(other, TorusClass) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_json(self):
        count = self.multiplicity_context
        return {"signature": list(self.signature), "invariant": self.invariant.name,
                "count": "inf" if count == INFINITE else count}

    def __repr__(self):
        return f"TorusClass({tuple(self.signature)}, {self.invariant.name!r})"


# -- theta action ---------------------------------------------------------------

def local_involution(T: Torus, theta: InvolutionSpec) -> InvolutionSpec:
    return conjugate_involution(theta, T.conjugator)


def lattice_action(T: Torus, theta: InvolutionSpec):
    """(pi, sign): theta acts on Y by v -> sign * P_pi v, where (P_pi v)[pi[j]] = v[j]."""
    m = local_involution(T, theta)
    perm = la.monomial_permutation(theta.field, m.matrix)
    if perm is None:
        raise NotThetaStable("theta does not preserve the torus")
    return perm, (1 if m.kind == "inner" else -1)


def act_on_cocharacter(action, v) -> tuple:
    perm, sign = action
    out = [0] * len(v)
    for j, x in enumerate(v):
        out[perm[j]] = sign * x
    return tuple(out)


def is_theta_stable(T: Torus, theta: InvolutionSpec) -> bool:
    m = local_involution(T, theta)
    return la.monomial_permutation(theta.field, m.matrix) is not None


def _cycles(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i not in seen:
            orbit = [i] if perm[i] == i else sorted((i, perm[i]))
            seen.update(orbit)
            out.append(orbit)
    return out


def _eigen_generators(perm, n):
    """Saturated bases of the +1 and -1 eigenlattices of P_pi on Y."""
    orbits = _cycles(perm)
    minus = []
    for o in orbits:
        if len(o) == 2:
            v = [0] * n
            v[o[0]], v[o[1]] = 1, -1
            minus.append(tuple(v))
    fixed = [o for o in orbits if len(o) == 1]
    anchor = fixed[0] if fixed else orbits[0]
    plus = []
    for o in orbits:
        if o is anchor:
            continue
        v = [0] * n
        for i in o:
            v[i] = 1
        scale = len(o) if fixed else 1
        for i in anchor:
            v[i] -= scale
        plus.append(tuple(v))
    return plus, minus


def decompose(T: Torus, theta: InvolutionSpec) -> Decomposition:
    perm, sign = lattice_action(T, theta)
    n = T.n
    basis = [tuple(1 if j == i else -1 if j == n - 1 else 0 for j in range(n)) for i in range(n - 1)]

    def eigen_dim(eps):
        images = [[a - eps * b for a, b in zip(act_on_cocharacter((perm, sign), v), v)] for v in basis]
        return (n - 1) - la.rational_rank(images)

    dim_plus, dim_minus = eigen_dim(1), eigen_dim(-1)
    fix, inv = _eigen_generators(perm, n)
    plus, minus = (fix, inv) if sign == 1 else (inv, fix)
    assert (len(plus), len(minus)) == (dim_plus, dim_minus)
    return Decomposition(dim_plus, dim_minus, plus, minus)


def signature(T: Torus, theta: InvolutionSpec) -> TorusSignature:
    d = decompose(T, theta)
    return TorusSignature(d.dim_plus, d.dim_minus)


def is_theta_k_split(T: Torus, theta: InvolutionSpec) -> bool:
    return decompose(T, theta).dim_minus == T.n - 1


def subtorus_points(T: Torus, cocharacters) -> set:
    """All k-points in the image of the given cocharacters (finite k)."""
    k = T.field
    units = [x for x in k.elements() if not k.is_zero(x)]
    n = T.n
    points = set()
    for ts in product(units, repeat=len(cocharacters)):
        diag = [k.one] * n
        for v, t in zip(cocharacters, ts):
            diag = [k.mul(d, k.pow(t, e)) for d, e in zip(diag, v)]
        points.add(T.element(diag))
    return points


# -- containment of subtori -------------------------------------------------------

def transport_cocharacters(src: Torus, dst: Torus, vectors):
    """Express cocharacters of src as cocharacters of dst, or None if the subtorus they
    span does not lie in dst."""
    if not vectors:
        return []
    k = src.field
    n = src.n
    P = la.mat_mul(k, dst.conjugator.inverse().entries, src.conjugator.entries)
    blocks = {}
    for i in range(n):
        blocks.setdefault(tuple(v[i] for v in vectors), []).append(i)
    target = [None] * n
    for values, cols in blocks.items():
        rows = [r for r in range(n) if any(not k.is_zero(P[r][c]) for c in cols)]
        if len(rows) != len(cols):
            return None
        for r in rows:
            target[r] = values
    return [tuple(target[r][idx] for r in range(n)) for idx in range(len(vectors))]


def minus_contained(A1: Torus, A2: Torus, theta: InvolutionSpec) -> bool:
    """A1^- inside A2^-."""
    image = transport_cocharacters(A1, A2, decompose(A1, theta).minus)
    if image is None:
        return False
    act = lattice_action(A2, theta)
    return all(act_on_cocharacter(act, w) == tuple(-x for x in w) for w in image)


def plus_contained(A1: Torus, A2: Torus, theta: InvolutionSpec) -> bool:
    """A1^+ inside A2^+."""
    image = transport_cocharacters(A1, A2, decompose(A1, theta).plus)
    if image is None:
        return False
    act = lattice_action(A2, theta)
    return all(act_on_cocharacter(act, w) == w for w in image)


def is_standard_pair(A1: Torus, A2: Torus, theta: InvolutionSpec) -> bool:
    return minus_contained(A1, A2, theta) and plus_contained(A2, A1, theta)


# -- SL(2) rule table -----------------------------------------------------------------

def _inner_sl2(theta) -> InvolutionSpec:
    if isinstance(theta, NamedInvolution):
        raise TypeError("expected an InvolutionSpec")
    if theta.n != 2:
        raise PreconditionError("the rule table is for SL(2)")
    return theta.as_inner_sl2()


def _base_vector(k, M):
    for w in ((1, 0), (0, 1), (1, 1)):
        w = (k(w[0]), k(w[1]))
        Mw = la.mat_vec(k, M, w)
        if not k.is_zero(la.det(k, (w, Mw))):
            return w
    raise AssertionError("no cyclic vector")


def _norm_index(k, c) -> int:
    """[k* : N(k[M]*) k*^2] for M^2 = c, from the standard local/finite facts."""
    if k.is_square(c):
        return 1
    root = _root_kind(k)
    if root in ("RealModel", "PadicModel"):
        return 2
    return 1


def _search_range(k):
    if k.is_finite:
        return sorted(k.elements(), key=k.encode)
    return [k(a) for a in sorted(range(-24, 25), key=lambda a: (abs(a), a < 0))]


def split_type_norm_classes(theta: InvolutionSpec, k: FieldModel, limit: int = 4):
    """Split-type classes for inner theta = Int(M), M^2 = c on SL(2).

    A split-type torus is the frame {L, ML} with L = z*w0 for z = a + bM in k[M]*;
    it is classified by the square class of N(z) = a^2 - c b^2 modulo the class
    of N(M) = -c.  Returns (list of (label, z), count).
    """
    M, c = theta.matrix, theta.c
    minus_c = k.square_class(k.neg(c)).name

    def reduce(name):
        return min(name, k.class_mul(name, minus_c), key=k.label_key)

    found = {}
    rng = _search_range(k)
    for b, a in product(rng, repeat=2):
        nz = k.sub(k.mul(a, a), k.mul(c, k.mul(b, b)))
        if k.is_zero(nz):
            continue
        label = reduce(k.square_class(nz).name)
        found.setdefault(label, (a, b))
    order = k.square_class_group_order()
    if order == INFINITE:
        labels = sorted(found, key=k.label_key)[:limit]
        return [(ClassLabel(lab, k.class_rep(lab)), found[lab]) for lab in labels], INFINITE
    cyc = 1 if k.is_square(k.neg(c)) else 2
    expected = order // _norm_index(k, c) // cyc
    if len(found) != expected:
        raise AssertionError(f"norm search found {len(found)} classes, expected {expected}")
    labels = sorted(found, key=k.label_key)
    return [(ClassLabel(lab, k.class_rep(lab)), found[lab]) for lab in labels], expected


def _split_frame(k, M, w0, z):
    """The frame {z*w0, M*z*w0} with z = a + bM."""
    a, b = z
    Mw0 = la.mat_vec(k, M, w0)
    v = tuple(k.add(k.mul(a, x), k.mul(b, y)) for x, y in zip(w0, Mw0))
    return [v, la.mat_vec(k, M, v)]


def _eigen_frame(k, M, c):
    s = k.sqrt(c)
    if s is None:
        return None
    vecs = []
    for lam in (s, k.neg(s)):
        A = ((k.sub(M[0][0], lam), M[0][1]), (M[1][0], k.sub(M[1][1], lam)))
        # kernel of a rank-one 2x2 matrix
        if not (k.is_zero(A[0][0]) and k.is_zero(A[0][1])):
            vecs.append((A[0][1], k.neg(A[0][0])))
        else:
            vecs.append((A[1][1], k.neg(A[1][0])))
    return vecs


def _check_padic(k):
    if isinstance(k, PadicModel) and k.p % 4 == 3:
        raise UnsupportedCombination(f"SL(2) table over {k.spec} is only pinned for p = 1 mod 4")


def sl2_table(theta: InvolutionSpec, k: FieldModel | None = None, limit: int = 4) -> list:
    k = theta.field if k is None else k
    _check_padic(k)
    th = _inner_sl2(theta)
    M, c = th.matrix, th.c
    if la.is_scalar(k, M):
        return [TorusClass((1, 0), ClassLabel("1", k.one), Torus.diagonal(2, k), 1)]
    w0 = _base_vector(k, M)
    labels, count = split_type_norm_classes(th, k, limit)
    classes = []
    for label, z in labels:
        rep = Torus.from_frame(_split_frame(k, M, w0, z), k)
        classes.append(TorusClass((0, 1), label, rep, count))
    if k.is_square(c):
        frame = _eigen_frame(k, M, c)
        rep = Torus.from_frame(frame, k) if frame is not None else None
        classes.append(TorusClass((1, 0), ClassLabel("1", k.one), rep, 1))
    return classes


# -- exhaustive classification over finite fields --------------------------------

def projective_points(n, k):
    out = []
    for v in product(sorted(k.elements(), key=k.encode), repeat=n):
        if any(not k.is_zero(x) for x in v) and la.normalize_line(k, v) == v:
            out.append(v)
    return out


def theta_stable_tori(theta: InvolutionSpec) -> list:
    """Every theta-stable maximal split torus of SL(n, k), k finite."""
    k, n = theta.field, theta.n
    out = []
    for frame in combinations(projective_points(n, k), n):
        if k.is_zero(la.det(k, frame)):
            continue
        T = Torus.from_frame(frame, k)
        if is_theta_stable(T, theta):
            out.append(T)
    return out


def _sl2_norm_label(theta: InvolutionSpec, T: Torus):
    k = theta.field
    th = theta.as_inner_sl2()
    M, c = th.matrix, th.c
    w0 = _base_vector(k, M)
    basis = la.transpose((w0, la.mat_vec(k, M, w0)))
    a, b = la.mat_vec(k, la.inverse(k, basis), T.columns()[0])
    nz = k.sub(k.mul(a, a), k.mul(c, k.mul(b, b)))
    minus_c = k.square_class(k.neg(c)).name
    name = k.square_class(nz).name
    name = min(name, k.class_mul(name, minus_c), key=k.label_key)
    return ClassLabel(name, k.class_rep(name))


def classify_exhaustive(theta: InvolutionSpec, budget=None) -> list:
    k, n = theta.field, theta.n
    if not k.is_finite:
        raise UnsupportedCombination("exhaustive classification needs a finite field")
    H = fixed_group(theta, budget)
    stable = theta_stable_tori(theta)
    index = {T.frame_key(): T for T in stable}
    seen, orbits = set(), []
    for key in sorted(index):
        if key in seen:
            continue
        T = index[key]
        orbit = {T.conjugate(h).frame_key() for h in H}
        seen |= orbit
        rep = index[min(orbit)]
        orbits.append((signature(rep, theta), rep, sorted(orbit)))
    orbits.sort(key=lambda o: (-o[0].dim_minus, o[2][0]))
    named = n == 2 and not la.is_scalar(k, theta.as_inner_sl2().matrix)
    classes = []
    for i, (sig, rep, orbit) in enumerate(orbits, 1):
        if named:
            label = _sl2_norm_label(theta, rep) if sig.dim_minus else ClassLabel("1", k.one)
        else:
            label = ClassLabel(f"o{i}", None)
        classes.append(TorusClass(sig, label, rep, size=len(orbit), members=[index[key] for key in orbit]))
    for cl in classes:
        cl.multiplicity_context = sum(1 for o in classes if o.signature == cl.signature)
    classes.sort(key=lambda cl: (-cl.signature.dim_minus, k.label_key(cl.invariant.name) if named
                                 else int(cl.invariant.name[1:])))
    return classes


def classify_torus_classes(n: int, theta, k: FieldModel, method: str = "auto", budget=None,
                           limit: int = 4) -> list:
    """H_k-classes of theta-stable maximal k-split tori.

    method: "table" (SL(2) rule table), "exhaustive" (finite fields) or "auto",
    which prefers the table for n = 2.
    """
    spec = theta.spec(k) if isinstance(theta, NamedInvolution) else theta
    if spec.n != n:
        raise PreconditionError(f"involution acts on SL({spec.n}), not SL({n})")
    if method == "auto":
        method = "table" if n == 2 else "exhaustive"
    if method == "table":
        if n != 2:
            raise UnsupportedCombination(f"no rule table for SL({n}) over {k.spec}")
        return sl2_table(spec, k, limit)
    if not k.is_finite:
        raise UnsupportedCombination(f"classification of SL({n}) over {k.spec} is not supported")
    return classify_exhaustive(spec, budget)


# -- rank and k-rank of H -----------------------------------------------------------

def rank_krank(n: int, theta: NamedInvolution, k: FieldModel):
    """(rank H, k-rank H) for H the fixed group of theta on SL(n)."""
    if theta.n != n:
        raise PreconditionError(f"involution acts on SL({theta.n}), not SL({n})")
    spec = theta.spec(k)
    if n == 2 and not theta.is_inner:
        spec = spec.as_inner_sl2()
    if spec.kind == "inner":
        if la.is_scalar(k, spec.matrix) or k.is_square(spec.c):
            return n - 1, n - 1
        if n % 2:
            raise AssertionError("M^2 = c with c nonsquare forces n even")
        return n - 1, n // 2 - 1
    rank = n // 2
    root = _root_kind(k)
    if isinstance(k, AlgClosedModel) or (isinstance(k, QuadExt) and root == "RealModel"):
        return rank, rank
    if isinstance(k, RealModel):
        return rank, 0
    if k.is_finite:
        if n % 2:
            return rank, (n - 1) // 2
        disc = k.one if (n // 2) % 2 == 0 else k.neg(k.one)
        return rank, n // 2 if k.is_square(disc) else n // 2 - 1
    raise UnsupportedCombination(f"Witt index of the sum of squares over {k.spec} is not modelled")


__all__ = [
    "Torus", "TorusSignature", "TorusClass", "Decomposition", "decompose", "signature",
    "is_theta_stable", "is_theta_k_split", "lattice_action", "act_on_cocharacter",
    "classify_torus_classes", "classify_exhaustive", "sl2_table", "theta_stable_tori",
    "is_standard_pair", "minus_contained", "plus_contained", "transport_cocharacters",
    "rank_krank", "subtorus_points", "local_involution",
]
