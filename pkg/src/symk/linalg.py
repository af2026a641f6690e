"""Exact dense linear algebra on tuple-of-tuple matrices over a field model."""
from __future__ import annotations

from fractions import Fraction


def identity(k, n):
    one, zero = k.one, k.zero
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def coerce(k, rows):
    return tuple(tuple(k(x) for x in row) for row in rows)


def mat_mul(k, A, B):
    add, mul = k.add, k.mul
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = mul(row[0], col[0])
            for a, b in zip(row[1:], col[1:]):
                acc = add(acc, mul(a, b))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(k, A, v):
    return tuple(_dot(k, row, v) for row in A)


def _dot(k, x, y):
    acc = k.zero
    for a, b in zip(x, y):
        acc = k.add(acc, k.mul(a, b))
    return acc


def transpose(A):
    return tuple(zip(*A))


def scale(k, c, A):
    return tuple(tuple(k.mul(c, a) for a in row) for row in A)


def det(k, A):
    """Determinant by fraction-free-in-spirit Gaussian elimination."""
    n = len(A)
    if n == 2:
        return k.sub(k.mul(A[0][0], A[1][1]), k.mul(A[0][1], A[1][0]))
    M = [list(row) for row in A]
    result = k.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not k.is_zero(M[r][c])), None)
        if piv is None:
            return k.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = k.neg(result)
        p = M[c][c]
        result = k.mul(result, p)
        pinv = k.inv(p)
        for r in range(c + 1, n):
            f = k.mul(M[r][c], pinv)
            if not k.is_zero(f):
                M[r] = [k.sub(a, k.mul(f, b)) for a, b in zip(M[r], M[c])]
    return result


def inverse(k, A):
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(A)
    if n == 2:
        d = det(k, A)
        di = k.inv(d)
        (a, b), (c, e) = A
        return ((k.mul(e, di), k.neg(k.mul(b, di))),
                (k.neg(k.mul(c, di)), k.mul(a, di)))
    M = [list(row) + list(irow) for row, irow in zip(A, identity(k, n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if not k.is_zero(M[r][c])), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        pinv = k.inv(M[c][c])
        M[c] = [k.mul(pinv, a) for a in M[c]]
        for r in range(n):
            if r != c and not k.is_zero(M[r][c]):
                f = M[r][c]
                M[r] = [k.sub(a, k.mul(f, b)) for a, b in zip(M[r], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def is_scalar(k, A):
    n = len(A)
    return all(k.is_zero(A[i][j]) for i in range(n) for j in range(n) if i != j) and \
        all(A[i][i] == A[0][0] for i in range(n))


def is_diagonal(k, A):
    n = len(A)
    return all(k.is_zero(A[i][j]) for i in range(n) for j in range(n) if i != j)


def monomial_permutation(k, A):
    """For a monomial matrix return pi with A e_j in the line of e_pi(j); else None."""
    n = len(A)
    perm = []
    for j in range(n):
        rows = [i for i in range(n) if not k.is_zero(A[i][j])]
        if len(rows) != 1:
            return None
        perm.append(rows[0])
    return tuple(perm) if len(set(perm)) == n else None


def rational_rank(rows) -> int:
    """Rank over Q of an integer or rational matrix."""
    M = [[Fraction(x) for x in row] for row in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def normalize_line(k, v):
    """Scale v so its first nonzero coordinate is 1."""
    lead = next(x for x in v if not k.is_zero(x))
    li = k.inv(lead)
    return tuple(k.mul(li, x) for x in v)


def fmt_matrix(k, A):
    return [[k.fmt(x) for x in row] for row in A]
