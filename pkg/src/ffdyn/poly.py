"""Univariate polynomials over a FieldCtx.

Polynomials are lists of element codes, low degree first, with no trailing
zeros; the zero polynomial is ``[]`` and has degree -1.
"""

from __future__ import annotations

from .ffield import FieldCtx


def trim(a) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    return len(trim(a)) - 1


def lead(a) -> int:
    a = trim(a)
    return a[-1] if a else 0


def add(F: FieldCtx, a, b) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim(F.add(x, y) for x, y in zip(a, b))


def sub(F: FieldCtx, a, b) -> list[int]:
    return add(F, a, [F.neg(y) for y in b])


def scale(F: FieldCtx, a, c: int) -> list[int]:
    return trim(F.mul(x, c) for x in a)


def mul(F: FieldCtx, a, b) -> list[int]:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                if y:
                    out[i + k] = F.add(out[i + k], F.mul(x, y))
    return trim(out)


def divmod_(F: FieldCtx, a, b) -> tuple[list[int], list[int]]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    r = list(a)
    qt = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = F.mul(c, inv_lead)
            qt[i - db] = c
            for k in range(db + 1):
                r[i - db + k] = F.sub(r[i - db + k], F.mul(c, b[k]))
    return trim(qt), trim(r[:db])


def monic(F: FieldCtx, a) -> list[int]:
    a = trim(a)
    if not a:
        return a
    return scale(F, a, F.inv(a[-1]))


def gcd(F: FieldCtx, a, b) -> list[int]:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def derivative(F: FieldCtx, a) -> list[int]:
    # i * a_i with the integer i read in the prime subfield
    return trim(F.mul(c, i % F.p) for i, c in enumerate(a) if i > 0)


def evaluate(F: FieldCtx, a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def determinant(F: FieldCtx, rows) -> int:
    """Determinant by Gaussian elimination over the field."""
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = F.neg(det)
        pv = m[col][col]
        det = F.mul(det, pv)
        inv = F.inv(pv)
        for r in range(col + 1, n):
            c = m[r][col]
            if c:
                c = F.mul(c, inv)
                m[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[r], m[col])]
    return det


def sylvester_matrix(a, b, m: int, n: int) -> list[list[int]]:
    """Sylvester matrix of a (formal degree m) and b (formal degree n).

    Rows hold coefficients high degree first: n shifted copies of a, then m of b.
    """
    ah = [a[i] if i < len(a) else 0 for i in range(m, -1, -1)]
    bh = [b[i] if i < len(b) else 0 for i in range(n, -1, -1)]
    size = m + n
    rows = []
    for s in range(n):
        rows.append([0] * s + ah + [0] * (size - m - 1 - s))
    for s in range(m):
        rows.append([0] * s + bh + [0] * (size - n - 1 - s))
    return rows


def resultant(F: FieldCtx, a, b, m: int | None = None, n: int | None = None) -> int:
    """Resultant via the Sylvester determinant.

    With the default (actual) degrees this is the usual Res(a, b), nonzero
    iff a and b have no common root in the algebraic closure.  Passing formal
    degrees m = n = d gives the resultant of the degree-d homogenizations,
    which also vanishes when both leading coefficients at degree d are zero.
    """
    a, b = trim(a), trim(b)
    if m is None:
        m = len(a) - 1
    if n is None:
        n = len(b) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0 and n == 0:
        return 1
    return determinant(F, sylvester_matrix(a, b, m, n))
