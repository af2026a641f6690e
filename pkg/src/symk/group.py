"""SL(n) over a field model: elements, involutions, tau and finite enumeration."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg as la
from .errors import BudgetExceeded, PreconditionError
from .field import FieldModel, Finite, QuadExt

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    return int(os.environ.get("SYMK_BUDGET", DEFAULT_BUDGET))


class GroupElement:
    """A determinant-one n x n matrix over a field model."""

    __slots__ = ("entries", "field")

    def __init__(self, entries, field: FieldModel, check: bool = True):
        if check:
            entries = la.coerce(field, entries)
            n = len(entries)
            if n < 1 or any(len(row) != n for row in entries):
                raise ValueError("group elements are square matrices")
            if la.det(field, entries) != field.one:
                raise ValueError("determinant is not 1")
        self.entries = entries
        self.field = field

    @classmethod
    def identity(cls, n: int, k: FieldModel) -> "GroupElement":
        return cls(la.identity(k, n), k, check=False)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return GroupElement(la.mat_mul(self.field, self.entries, other.entries), self.field, check=False)

    def inverse(self) -> "GroupElement":
        return GroupElement(la.inverse(self.field, self.entries), self.field, check=False)

    def transpose(self) -> "GroupElement":
        return GroupElement(la.transpose(self.entries), self.field, check=False)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.entries == other.entries \
            and self.field == other.field

    def __hash__(self):
        return hash(self.entries)

    def key(self) -> tuple:
        """Canonical encoding used for lexicographic ordering."""
        enc = self.field.encode
        return tuple(c for row in self.entries for x in row for c in enc(x))

    def tolist(self):
        return la.fmt_matrix(self.field, self.entries)

    def __repr__(self):
        return f"GroupElement({self.tolist()})"


class InvolutionSpec:
    """theta(g) = M g M^-1 (inner) or theta(g) = M (g^T)^-1 M^-1 (outer).

    Inner needs M^2 = c*I, outer needs M^T = c*M with c = +-1; M itself only has
    to be invertible, since the automorphism depends on M up to scalars.
    """

    def __init__(self, kind: str, matrix, field: FieldModel, raw: bool = False):
        if kind not in ("inner", "outer"):
            raise ValueError(f"unknown involution kind {kind!r}")
        k = field
        # raw: entries are already field elements (finite-field codes are not integers)
        M = tuple(map(tuple, matrix)) if raw else la.coerce(k, matrix)
        if k.is_zero(la.det(k, M)):
            raise ValueError("involution matrix must be invertible")
        if kind == "inner":
            sq = la.mat_mul(k, M, M)
            if not la.is_scalar(k, sq):
                raise ValueError("inner involution needs M^2 to be scalar")
            c = sq[0][0]
        else:
            Mt = la.transpose(M)
            if Mt == M:
                c = k.one
            elif Mt == tuple(tuple(k.neg(x) for x in row) for row in M):
                c = k.neg(k.one)
            else:
                raise ValueError("outer involution needs M symmetric or antisymmetric")
        self.kind, self.matrix, self.field, self.c = kind, M, k, c
        self.matrix_inv = la.inverse(k, M)

    @classmethod
    def inner(cls, matrix, field):
        return cls("inner", matrix, field)

    @classmethod
    def transpose_inverse(cls, n, field):
        return cls("outer", la.identity(field, n), field)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def apply(self, g: GroupElement) -> GroupElement:
        if g.n != self.n:
            raise ValueError(f"dimension mismatch: involution on SL({self.n}), element of SL({g.n})")
        k = self.field
        x = g.entries
        if self.kind == "outer":
            x = la.transpose(la.inverse(k, x))
        return GroupElement(la.mat_mul(k, la.mat_mul(k, self.matrix, x), self.matrix_inv), k, check=False)

    def fixes(self, g: GroupElement) -> bool:
        k = self.field
        if self.kind == "inner":
            return la.mat_mul(k, self.matrix, g.entries) == la.mat_mul(k, g.entries, self.matrix)
        return self.apply(g) == g

    def as_inner_sl2(self) -> "InvolutionSpec":
        """On SL(2), g^-T = J g J^-1, so every involution here is inner."""
        if self.kind == "inner":
            return self
        if self.n != 2:
            raise PreconditionError("only SL(2) outer involutions are inner")
        k = self.field
        J = la.coerce(k, ((0, 1), (-1, 0)))
        return InvolutionSpec("inner", la.mat_mul(k, self.matrix, J), k, raw=True)

    def __eq__(self, other):
        return isinstance(other, InvolutionSpec) and (self.kind, self.matrix, self.field) == \
            (other.kind, other.matrix, other.field)

    def __hash__(self):
        return hash((self.kind, self.matrix))

    def __repr__(self):
        return f"InvolutionSpec({self.kind}, {la.fmt_matrix(self.field, self.matrix)}, {self.field.spec})"


def apply_involution(theta: InvolutionSpec, g: GroupElement) -> GroupElement:
    return theta.apply(g)


def is_fixed(theta: InvolutionSpec, g: GroupElement) -> bool:
    return theta.fixes(g)


def tau(theta: InvolutionSpec, x: GroupElement) -> GroupElement:
    """x theta(x)^-1; constant on right H-cosets."""
    return x * theta.apply(x).inverse()


def conjugate_involution(theta: InvolutionSpec, g: GroupElement) -> InvolutionSpec:
    """Int(g)^-1 theta Int(g); its fixed group is g^-1 H g."""
    if g.field != theta.field or g.n != theta.n:
        raise PreconditionError("conjugator must live in the same SL(n, k)")
    k = theta.field
    gi = la.inverse(k, g.entries)
    if theta.kind == "inner":
        M = la.mat_mul(k, la.mat_mul(k, gi, theta.matrix), g.entries)
    else:
        M = la.mat_mul(k, la.mat_mul(k, gi, theta.matrix), la.transpose(gi))
    return InvolutionSpec(theta.kind, M, k, raw=True)


# -- named involutions --------------------------------------------------------

def _anti_identity(size):
    return [[1 if i + j == size - 1 else 0 for j in range(size)] for i in range(size)]


@dataclass(frozen=True)
class NamedInvolution:
    """A named family member; ``spec(k)`` realises it over a field model.

    params: BlockJ -> (i,), Lx -> (m, x), Inner -> (rows,) with rational entries.
    """

    tag: str
    n: int
    params: tuple = ()

    def __post_init__(self):
        if self.tag in ("AntiDiag", "Symplectic2") and self.n != 2:
            raise ValueError(f"{self.tag} lives on SL(2)")
        if self.tag == "BlockJ":
            (i,) = self.params
            if not 0 <= 2 * i <= self.n:
                raise ValueError("BlockJ(n, i) needs 0 <= 2i <= n")
        if self.tag == "Lx":
            m, x = self.params
            if self.n != 2 * m or m < 1:
                raise ValueError("Lx(m, x) lives on SL(2m)")
            if Fraction(x) == 0:
                raise ValueError("Lx needs x != 0")
        if self.tag not in ("AntiDiag", "Symplectic2", "BlockJ", "Lx", "TransposeInverse", "Inner"):
            raise ValueError(f"unknown involution tag {self.tag}")

    @classmethod
    def antidiag(cls):
        return cls("AntiDiag", 2)

    @classmethod
    def symplectic(cls):
        return cls("Symplectic2", 2)

    @classmethod
    def block_j(cls, n, i):
        return cls("BlockJ", n, (i,))

    @classmethod
    def lx(cls, m, x):
        return cls("Lx", 2 * m, (m, Fraction(x)))

    @classmethod
    def transpose_inverse(cls, n):
        return cls("TransposeInverse", n)

    @classmethod
    def inner(cls, rows):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        return cls("Inner", len(rows), (rows,))

    def matrix(self):
        n = self.n
        if self.tag == "AntiDiag":
            return [[0, 1], [1, 0]]
        if self.tag == "Symplectic2":
            return [[0, 1], [-1, 0]]
        if self.tag == "BlockJ":
            (i,) = self.params
            M = [[0] * n for _ in range(n)]
            J = _anti_identity(2 * i)
            for r in range(2 * i):
                for c in range(2 * i):
                    M[r][c] = J[r][c]
            for r in range(2 * i, n):
                M[r][r] = 1
            return M
        if self.tag == "Lx":
            m, x = self.params
            M = [[0] * n for _ in range(n)]
            for b in range(m):
                M[2 * b][2 * b + 1] = 1
                M[2 * b + 1][2 * b] = x
            return M
        if self.tag == "TransposeInverse":
            return [[int(i == j) for j in range(n)] for i in range(n)]
        return [list(row) for row in self.params[0]]

    def spec(self, k: FieldModel) -> InvolutionSpec:
        kind = "outer" if self.tag == "TransposeInverse" else "inner"
        return InvolutionSpec(kind, self.matrix(), k)

    @property
    def is_inner(self) -> bool:
        return self.tag != "TransposeInverse"

    @property
    def canonical(self) -> str:
        if self.tag == "AntiDiag":
            return "antidiag"
        if self.tag == "Symplectic2":
            return "symplectic"
        if self.tag == "BlockJ":
            return f"blockJ:n={self.n},i={self.params[0]}"
        if self.tag == "Lx":
            m, x = self.params
            return f"Lx:m={m},x={x}"
        if self.tag == "TransposeInverse":
            return "transpose-inverse"
        rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.params[0])
        return f"inner:[{rows}]"

    def __str__(self):
        return self.canonical


# -- finite enumeration -------------------------------------------------------

def sl_order(n: int, q: int) -> int:
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q**i - 1
    return order


def field_size(k: FieldModel) -> int:
    if not k.is_finite:
        raise PreconditionError(f"{k.spec} is not finite")
    return len(k.elements())


def enumerate_group(n: int, k, budget: int | None = None):
    """Yield every element of SL(n, k) for finite k, lexicographically.

    The first n-1 rows run through all tuples in order and the last row is
    completed from the cofactor functional, so the stream is sorted by the
    flattened entry encoding.
    """
    if isinstance(k, int):
        k = Finite(k)
    budget = default_budget() if budget is None else budget
    q = field_size(k)
    if sl_order(n, q) > budget:
        raise BudgetExceeded(f"|SL({n},{q})| = {sl_order(n, q)} exceeds budget {budget}")
    elems = sorted(k.elements(), key=k.encode)
    one = k.one
    for flat in product(elems, repeat=n * (n - 1)):
        rows = [flat[i * n:(i + 1) * n] for i in range(n - 1)]
        cof = []
        for j in range(n):
            minor = tuple(tuple(r[c] for c in range(n) if c != j) for r in rows)
            d = la.det(k, minor) if n > 1 else one
            cof.append(d if (n - 1 + j) % 2 == 0 else k.neg(d))
        nz = [j for j in range(n) if not k.is_zero(cof[j])]
        if not nz:
            continue
        piv = nz[-1]
        pinv = k.inv(cof[piv])
        completions = []
        for free in product(elems, repeat=n - 1):
            last = list(free[:piv]) + [None] + list(free[piv:])
            acc = one
            for j in range(n):
                if j != piv:
                    acc = k.sub(acc, k.mul(last[j], cof[j]))
            last[piv] = k.mul(acc, pinv)
            completions.append(tuple(last))
        completions.sort(key=lambda r: tuple(c for x in r for c in k.encode(x)))
        for last in completions:
            yield GroupElement(tuple(rows) + (last,), k, check=False)


def fixed_group(theta: InvolutionSpec, budget: int | None = None) -> list:
    """H_k = G^theta(k) by filtering the enumeration (finite k only)."""
    return [g for g in enumerate_group(theta.n, theta.field, budget) if theta.fixes(g)]


def subgroup_closure(gens, n, k) -> set:
    e = GroupElement.identity(n, k)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def generating_set(elements, n, k) -> list:
    """Greedy generating set of the finite subgroup with the given elements."""
    gens, closure = [], {GroupElement.identity(n, k)}
    for h in sorted(elements, key=GroupElement.key):
        if h not in closure:
            gens.append(h)
            closure = subgroup_closure(gens, n, k)
    return gens


def primitive_element(k):
    if isinstance(k, Finite):
        return k.primitive_element()
    order = field_size(k) - 1
    for x in k.elements():
        if k.is_zero(x):
            continue
        y, m = x, 1
        while y != k.one:
            y = k.mul(y, x)
            m += 1
        if m == order:
            return x
    raise AssertionError("no primitive element")


def additive_basis(k):
    if isinstance(k, Finite):
        return k.additive_basis()
    if isinstance(k, QuadExt):
        base = additive_basis(k.base)
        return [(b, k.base.zero) for b in base] + [(k.base.zero, b) for b in base]
    raise PreconditionError(f"no additive basis for {k.spec}")


def borel_generators(n: int, k) -> list:
    """Generators of the upper-triangular Borel subgroup of SL(n, k), k finite."""
    z = primitive_element(k)
    zi = k.inv(z)
    gens = []
    for i in range(n - 1):
        d = [[k.one if r == c else k.zero for c in range(n)] for r in range(n)]
        d[i][i], d[i + 1][i + 1] = z, zi
        gens.append(GroupElement(tuple(map(tuple, d)), k, check=False))
    for i in range(n):
        for j in range(i + 1, n):
            for b in additive_basis(k):
                u = [[k.one if r == c else k.zero for c in range(n)] for r in range(n)]
                u[i][j] = b
                gens.append(GroupElement(tuple(map(tuple, u)), k, check=False))
    return gens
