"""Parsers for field, involution and group specification strings."""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import SpecParseError
from .field import AlgClosedModel, Finite, PadicModel, QuadExt, Rational, RealModel
from .group import NamedInvolution

_RATIONAL = re.compile(r"-?\d+(/\d+)?")
_INT = re.compile(r"\d+")


class _Cursor:
    def __init__(self, text):
        self.text, self.pos = text, 0

    def error(self, message, pos=None):
        return SpecParseError(self.text, self.pos if pos is None else pos, message)

    def peek(self, s):
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def match(self, pattern, what):
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def rational(self):
        start = self.pos
        tok = self.match(_RATIONAL, "a rational number")
        try:
            return Fraction(tok)
        except ZeroDivisionError:
            raise self.error("zero denominator", start) from None

    def integer(self):
        return int(self.match(_INT, "an integer"))

    def done(self):
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")


def parse_field(text: str):
    """'Q', 'R', 'Cbar', 'Qp:5', 'Fq:7', each optionally followed by '(sqrt:d)' suffixes."""
    cur = _Cursor(text.strip())
    start = cur.pos
    if cur.peek("Qp:"):
        cur.expect("Qp:")
        p_pos = cur.pos
        p = cur.integer()
        try:
            k = PadicModel(p)
        except ValueError as exc:
            raise cur.error(str(exc), p_pos) from None
    elif cur.peek("Fq:"):
        cur.expect("Fq:")
        q_pos = cur.pos
        q = cur.integer()
        try:
            k = Finite(q)
        except ValueError as exc:
            raise cur.error(str(exc), q_pos) from None
    elif cur.peek("Cbar"):
        cur.expect("Cbar")
        k = AlgClosedModel()
    elif cur.peek("Q"):
        cur.expect("Q")
        k = Rational()
    elif cur.peek("R"):
        cur.expect("R")
        k = RealModel()
    else:
        raise cur.error("unknown field kind", start)
    while cur.peek("("):
        cur.expect("(sqrt:")
        d_pos = cur.pos
        d = cur.rational()
        cur.expect(")")
        try:
            k = QuadExt(k, d)
        except (ValueError, ZeroDivisionError) as exc:
            raise cur.error(str(exc), d_pos) from None
    cur.done()
    return k


def _params(cur, names):
    out = {}
    for idx, name in enumerate(names):
        if idx:
            cur.expect(",")
        cur.expect(f"{name}=")
        out[name] = cur.rational() if name == "x" else cur.integer()
    return out


def _matrix(cur):
    rows = []
    cur.expect("[")
    while True:
        cur.expect("[")
        row = [cur.rational()]
        while cur.peek(","):
            cur.expect(",")
            row.append(cur.rational())
        cur.expect("]")
        rows.append(row)
        if cur.peek(","):
            cur.expect(",")
            continue
        break
    cur.expect("]")
    return rows


def parse_involution(text: str, n: int | None = None) -> NamedInvolution:
    """Involution spec; n (from --group) fills in transpose-inverse and is checked otherwise."""
    cur = _Cursor("".join(text.split()))
    start = cur.pos
    try:
        if cur.peek("antidiag"):
            cur.expect("antidiag")
            inv = NamedInvolution.antidiag()
        elif cur.peek("symplectic"):
            cur.expect("symplectic")
            inv = NamedInvolution.symplectic()
        elif cur.peek("transpose-inverse"):
            cur.expect("transpose-inverse")
            inv = NamedInvolution.transpose_inverse(2 if n is None else n)
        elif cur.peek("blockJ:"):
            cur.expect("blockJ:")
            p = _params(cur, ("n", "i"))
            inv = NamedInvolution.block_j(p["n"], p["i"])
        elif cur.peek("Lx:"):
            cur.expect("Lx:")
            p = _params(cur, ("m", "x"))
            inv = NamedInvolution.lx(p["m"], p["x"])
        elif cur.peek("inner:"):
            cur.expect("inner:")
            rows = _matrix(cur)
            if any(len(r) != len(rows) for r in rows):
                raise cur.error("inner matrix must be square", start + len("inner:"))
            inv = NamedInvolution.inner(rows)
            inv.spec(Rational())
        else:
            raise cur.error("unknown involution", start)
        cur.done()
    except ValueError as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise cur.error(str(exc), start) from None
    if n is not None and inv.n != n:
        raise cur.error(f"involution acts on SL({inv.n}) but the group is SL({n})", start)
    return inv


def parse_group(text: str) -> int:
    cur = _Cursor(text.strip())
    cur.expect("sl:")
    pos = cur.pos
    n = cur.integer()
    cur.done()
    if n < 2:
        raise cur.error("n must be at least 2", pos)
    return n
