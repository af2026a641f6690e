"""Base-field models.

Each model pairs an exact carrier for scalars with a rule deciding membership
in the subgroup of squares:

* ``Rational``, ``RealModel``, ``PadicModel``, ``AlgClosedModel`` all carry
  ``Fraction`` values and differ only in their square decision.
* ``Finite`` carries residue codes ``0 .. q-1``.  For prime ``q`` the code is
  the residue itself; for ``q = p**e`` the code is ``sum(c_i * p**i)`` where
  ``c_i`` are the coefficients of the element in ``F_p[w]/(f)``.
* ``QuadExt`` carries pairs ``(a, b)`` standing for ``a + b*sqrt(d)``.

Scalars are plain immutable Python values, so models are safe to share.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import NamedTuple

from sympy import factorint

from .errors import UnsupportedCombination

INFINITE = math.inf


class ClassLabel(NamedTuple):
    """A square class: printable name plus a representative scalar."""

    name: str
    rep: object


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational scalar")


def rational_sqrt(x: Fraction):
    """Exact square root of a rational, or None when it is irrational."""
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def squarefree_kernel(x: Fraction) -> int:
    """Signed squarefree integer s with x in s * (Q*)^2."""
    m = x.numerator * x.denominator
    kernel = -1 if m < 0 else 1
    for p, e in factorint(abs(m)).items():
        if e % 2:
            kernel *= p
    return kernel


def valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class FieldModel:
    """Common surface of every field model.

    Subclasses provide arithmetic on their carrier and the square-class
    layer.  Models compare equal when their specification strings agree.
    """

    kind = "abstract"
    characteristic = 0
    is_finite = False

    # -- arithmetic -------------------------------------------------------
    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, x) -> bool:
        return x == self.zero

    # -- square classes ---------------------------------------------------
    def class_rep(self, name: str):
        raise NotImplementedError

    def class_mul(self, a: str, b: str) -> str:
        """Product in the group k*/(k*)^2, by label."""
        return self.square_class(self.mul(self.class_rep(a), self.class_rep(b))).name

    def label_key(self, name: str):
        return name

    def _check_nonzero(self, x):
        if self.is_zero(x):
            raise ValueError("zero has no square class")

    # -- misc ---------------------------------------------------------------
    def fmt(self, x) -> str:
        return str(x)

    def encode(self, x) -> tuple:
        return (x,)

    def elements(self):
        raise UnsupportedCombination(f"{self.spec} is not a finite field")

    def __eq__(self, other):
        return isinstance(other, FieldModel) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def __str__(self):
        return self.spec


class _FractionField(FieldModel):
    """Characteristic-0 models carried by exact rationals."""

    def __call__(self, x):
        return to_fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def sqrt(self, x):
        return rational_sqrt(x)


class Rational(_FractionField):
    kind = "Rational"
    spec = "Q"

    def is_square(self, x) -> bool:
        self._check_nonzero(x)
        return rational_sqrt(x) is not None

    def square_class(self, x) -> ClassLabel:
        self._check_nonzero(x)
        s = squarefree_kernel(x)
        return ClassLabel(str(s), Fraction(s))

    def class_rep(self, name):
        return Fraction(int(name))

    def label_key(self, name):
        v = int(name)
        return (abs(v), v < 0)

    def square_class_group_order(self):
        return INFINITE


class RealModel(_FractionField):
    """The reals, through rational points and the sign rule."""

    kind = "RealModel"
    spec = "R"

    def is_square(self, x) -> bool:
        self._check_nonzero(x)
        return x > 0

    def square_class(self, x) -> ClassLabel:
        self._check_nonzero(x)
        return ClassLabel("1", Fraction(1)) if x > 0 else ClassLabel("-1", Fraction(-1))

    def class_rep(self, name):
        return Fraction(int(name))

    def label_key(self, name):
        return ("1", "-1").index(name)

    def square_class_group_order(self):
        return 2


class PadicModel(_FractionField):
    """Q_p for odd p, through rational points and (valuation, residue)."""

    kind = "PadicModel"

    def __init__(self, p: int):
        p = int(p)
        if p == 2:
            raise ValueError("PadicModel requires an odd prime; p = 2 is not modelled")
        if p < 2 or list(factorint(p).items()) != [(p, 1)]:
            raise ValueError(f"PadicModel requires a prime, got {p}")
        self.p = p
        self.u = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)

    @property
    def spec(self):
        return f"Qp:{self.p}"

    def _val_unit(self, x: Fraction):
        p = self.p
        a = valuation(x.numerator, p)
        b = valuation(x.denominator, p)
        num = (x.numerator // p**a) % p
        den = (x.denominator // p**b) % p
        return a - b, num * pow(den, -1, p) % p

    def is_square(self, x) -> bool:
        self._check_nonzero(x)
        v, r = self._val_unit(x)
        return v % 2 == 0 and pow(r, (self.p - 1) // 2, self.p) == 1

    def square_class(self, x) -> ClassLabel:
        self._check_nonzero(x)
        v, r = self._val_unit(x)
        nonres = pow(r, (self.p - 1) // 2, self.p) != 1
        name = ("u" if nonres else "") + ("p" if v % 2 else "")
        name = name or "1"
        return ClassLabel(name, self.class_rep(name))

    def class_rep(self, name):
        return {"1": Fraction(1), "u": Fraction(self.u), "p": Fraction(self.p),
                "up": Fraction(self.u * self.p)}[name]

    def label_key(self, name):
        return ("1", "u", "p", "up").index(name)

    def square_class_group_order(self):
        return 4


class AlgClosedModel(_FractionField):
    """Algebraic closure: every nonzero scalar counts as a square."""

    kind = "AlgClosedModel"
    spec = "Cbar"

    def is_square(self, x) -> bool:
        self._check_nonzero(x)
        return True

    def square_class(self, x) -> ClassLabel:
        self._check_nonzero(x)
        return ClassLabel("1", Fraction(1))

    def class_rep(self, name):
        return Fraction(1)

    def square_class_group_order(self):
        return 1


class Finite(FieldModel):
    """F_q, q an odd prime power, with table arithmetic on residue codes."""

    kind = "Finite"
    is_finite = True
    MAX_Q = 729

    def __init__(self, q: int):
        q = int(q)
        f = factorint(q) if q > 1 else {}
        if len(f) != 1:
            raise ValueError(f"Finite requires a prime power, got {q}")
        (p, e), = f.items()
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if q > self.MAX_Q:
            raise ValueError(f"Finite fields are table-driven; q <= {self.MAX_Q}")
        self.q, self.p, self.degree = q, p, e
        self.characteristic = p
        self._add = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]
        self._mul = self._build_mul()
        self._neg = [self._add[a].index(0) for a in range(q)]
        self._inv = [None] + [self._mul[a].index(1) for a in range(1, q)]
        half = (q - 1) // 2
        self._square = [False] + [self.pow(a, half) == 1 for a in range(1, q)]
        self._sqrt = {}
        for a in range(q):
            self._sqrt.setdefault(self._mul[a][a], a)
        self.u = next(a for a in range(1, q) if not self._square[a])

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.degree)]

    def _code(self, digits):
        return sum(c * self.p**i for i, c in enumerate(digits))

    def _digit_add(self, a, b):
        return self._code([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _build_mul(self):
        q, p, e = self.q, self.p, self.degree
        if e == 1:
            return [[a * b % p for b in range(q)] for a in range(q)]
        # first monic f of degree e for which F_p[w]/(f) is a field
        for low in product(range(p), repeat=e):
            if low[0] == 0:
                continue
            modulus = list(low) + [1]
            table = [[self._code(self._polymulmod(self._digits(a), self._digits(b), modulus))
                      for b in range(q)] for a in range(q)]
            if all(1 in table[a] for a in range(1, q)):
                self.modulus = tuple(modulus)
                return table
        raise AssertionError("no irreducible polynomial found")

    def _polymulmod(self, x, y, modulus):
        p, e = self.p, self.degree
        prod = [0] * (2 * e - 1)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                prod[i + j] = (prod[i + j] + a * b) % p
        for top in range(len(prod) - 1, e - 1, -1):
            c = prod[top]
            if c:
                for i in range(e + 1):
                    prod[top - e + i] = (prod[top - e + i] - c * modulus[i]) % p
        return prod[:e]

    @property
    def spec(self):
        return f"Fq:{self.q}"

    def __call__(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        x = to_fraction(x)
        return self.div(x.numerator % self.p, x.denominator % self.p)

    def element(self, code: int) -> int:
        """The element with the given residue code (bypasses coercion)."""
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for F_{self.q}")
        return code

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def neg(self, a):
        return self._neg[a]

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def is_square(self, x) -> bool:
        self._check_nonzero(x)
        return self._square[x]

    def square_class(self, x) -> ClassLabel:
        return ClassLabel("1", 1) if self.is_square(x) else ClassLabel("u", self.u)

    def class_rep(self, name):
        return {"1": 1, "u": self.u}[name]

    def label_key(self, name):
        return ("1", "u").index(name)

    def square_class_group_order(self):
        return 2

    def sqrt(self, x):
        return self._sqrt.get(x)

    def elements(self):
        return list(range(self.q))

    def primitive_element(self) -> int:
        for g in range(2, self.q):
            x, order = g, 1
            while x != 1:
                x = self._mul[x][g]
                order += 1
            if order == self.q - 1:
                return g
        raise AssertionError("multiplicative group is not cyclic")

    def additive_basis(self):
        return [self.p**i for i in range(self.degree)]


def _root_kind(k: FieldModel) -> str:
    while isinstance(k, QuadExt):
        k = k.base
    return k.kind


class QuadExt(FieldModel):
    """k(sqrt(d)) for d a nonsquare of k; scalars are pairs (a, b)."""

    kind = "QuadExt"

    def __init__(self, base: FieldModel, d):
        d = base(d)
        if base.is_zero(d) or base.is_square(d):
            raise ValueError(f"{base.fmt(d)} is a square in {base.spec}; QuadExt needs a nonsquare")
        self.base, self.d = base, d
        self.characteristic = base.characteristic
        self.is_finite = base.is_finite
        self._u = None

    @property
    def spec(self):
        return f"{self.base.spec}(sqrt:{self.base.fmt(self.d)})"

    def __call__(self, x):
        if isinstance(x, tuple):
            a, b = x
            return (self.base(a), self.base(b))
        return (self.base(x), self.base.zero)

    @property
    def root(self):
        """sqrt(d) as an element."""
        return (self.base.zero, self.base.one)

    def add(self, x, y):
        B = self.base
        return (B.add(x[0], y[0]), B.add(x[1], y[1]))

    def sub(self, x, y):
        B = self.base
        return (B.sub(x[0], y[0]), B.sub(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        B = self.base
        a, b = x
        c, e = y
        return (B.add(B.mul(a, c), B.mul(self.d, B.mul(b, e))),
                B.add(B.mul(a, e), B.mul(b, c)))

    def norm(self, x):
        B = self.base
        return B.sub(B.mul(x[0], x[0]), B.mul(self.d, B.mul(x[1], x[1])))

    def inv(self, x):
        B = self.base
        n = self.norm(x)
        if B.is_zero(n):
            raise ZeroDivisionError("inverse of zero")
        ni = B.inv(n)
        return (B.mul(x[0], ni), B.neg(B.mul(x[1], ni)))

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def _halves(self, x):
        """Candidates for s^2 when x = (s + t*sqrt(d))^2 with s, t != 0."""
        B = self.base
        a, b = x
        c = B.sqrt(self.norm(x))
        if c is None:
            raise UnsupportedCombination(
                f"square test in {self.spec} needs a square root of a norm beyond the rational carrier")
        half = B.inv(B(2))
        return B.mul(B.add(a, c), half), B.mul(B.sub(a, c), half)

    def is_square(self, x) -> bool:
        self._check_nonzero(x)
        B = self.base
        if _root_kind(self) == "RealModel":
            return True
        a, b = x
        if B.is_zero(b):
            return B.is_square(a) or B.is_square(B.div(a, self.d))
        if not B.is_square(self.norm(x)):
            return False
        plus, minus = self._halves(x)
        return B.is_square(plus) or B.is_square(minus)

    def sqrt(self, x):
        B = self.base
        a, b = x
        if self.is_zero(x):
            return x
        if B.is_zero(b):
            s = B.sqrt(a) if B.is_square(a) else None
            if s is not None:
                return (s, B.zero)
            if B.is_square(B.div(a, self.d)):
                t = B.sqrt(B.div(a, self.d))
                return None if t is None else (B.zero, t)
            return None
        if not B.is_square(self.norm(x)) or B.sqrt(self.norm(x)) is None:
            return None
        for cand in self._halves(x):
            if B.is_square(cand):
                s = B.sqrt(cand)
                if s is None:
                    return None
                return (s, B.div(b, B.mul(B(2), s)))
        return None

    def square_class(self, x) -> ClassLabel:
        self._check_nonzero(x)
        root = _root_kind(self)
        if root == "RealModel":
            return ClassLabel("1", self.one)
        if self.is_finite:
            return ClassLabel("1", self.one) if self.is_square(x) else ClassLabel("u", self._nonsquare())
        if isinstance(self.base, Rational) and x[1] == 0:
            s1 = squarefree_kernel(x[0])
            s2 = squarefree_kernel(x[0] * self.d)
            s = min(s1, s2, key=lambda v: (abs(v), v < 0))
            return ClassLabel(str(s), self(s))
        raise UnsupportedCombination(f"square-class labels are not modelled for this element of {self.spec}")

    def _nonsquare(self):
        if self._u is None:
            self._u = next(x for x in self.elements() if not self.is_zero(x) and not self.is_square(x))
        return self._u

    def class_rep(self, name):
        if self.is_finite:
            return {"1": self.one, "u": self._nonsquare()}[name]
        if _root_kind(self) == "RealModel":
            return self.one
        return self(int(name))

    def label_key(self, name):
        if self.is_finite:
            return ("1", "u").index(name)
        if _root_kind(self) == "RealModel":
            return 0
        v = int(name)
        return (abs(v), v < 0)

    def square_class_group_order(self):
        return {"Finite": 2, "RealModel": 1, "PadicModel": 4,
                "Rational": INFINITE}[_root_kind(self)]

    def elements(self):
        base = self.base.elements()
        return [(a, b) for a in base for b in base]

    def fmt(self, x) -> str:
        B = self.base
        a, b = x
        if B.is_zero(b):
            return B.fmt(a)
        r = f"sqrt({B.fmt(self.d)})"
        tail = r if b == B.one else f"{B.fmt(b)}*{r}"
        return tail if B.is_zero(a) else f"{B.fmt(a)}+{tail}"

    def encode(self, x) -> tuple:
        return self.base.encode(x[0]) + self.base.encode(x[1])
