"""Finite fields F_{p^j} with elements packed into integers.

An element with power-basis coordinates (c_0, ..., c_{j-1}) is stored as the
integer ``c_0 + c_1 p + ... + c_{j-1} p^{j-1}``, so the elements of a field of
size q are exactly ``range(q)`` and 0 and 1 keep their usual meaning.  Every
scalar operation on a :class:`FieldCtx` takes and returns such integers; the
``v``-prefixed operations do the same on numpy arrays.  :class:`FieldElem` is a
thin operator-overloading wrapper for interactive use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_DEGREE = 12
MAX_CARDINALITY = 2**20

# Full addition tables are built up to this size; larger fields add digitwise.
_ADD_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if n % m == 0]


# --- polynomials over F_p, coefficient lists low-to-high -------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m, over F_p."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for k in range(dm + 1):
                a[i - dm + k] = (a[i - dm + k] - c * m[k]) % p
    return _trim([c % p for c in a[:dm]])


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                prod[i + k] += x * y
    return _pmod(prod, m, p)


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _monic_polys(p: int, deg: int):
    """All monic polynomials of the given degree, in lexicographic order."""
    for k in range(p**deg):
        low = [(k // p**i) % p for i in range(deg)]
        yield low + [1]


def _divides(f: list[int], m: list[int], p: int) -> bool:
    return not _pmod(m, f, p)


def is_irreducible(m: list[int], p: int) -> bool:
    """Trial division of the monic m by every monic polynomial of degree <= deg(m)/2."""
    n = len(m) - 1
    if n <= 1:
        return n == 1
    for deg in range(1, n // 2 + 1):
        for f in _monic_polys(p, deg):
            if _divides(f, m, p):
                return False
    return True


def least_irreducible(p: int, j: int) -> tuple[int, ...]:
    for m in _monic_polys(p, j):
        if is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# --- field context ---------------------------------------------------------


class FieldCtx:
    """Arithmetic in F_p[x]/(modulus) on packed integer elements.

    Instances are immutable after construction; lookup tables are built
    lazily on first use of multiplication.
    """

    def __init__(self, p: int, j: int, modulus: tuple[int, ...]):
        self.p = p
        self.j = j
        self.modulus = modulus
        self.q = p**j
        self._pw = [p**i for i in range(j)]

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, j={self.j}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.j, self.modulus) == (
            other.p,
            other.j,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.j, self.modulus))

    def __reduce__(self):
        return (make_field, (self.p, self.j))

    @property
    def q_pow_j(self) -> int:
        return self.q

    # coordinates

    def coords(self, a: int) -> tuple[int, ...]:
        return tuple((a // w) % self.p for w in self._pw)

    def from_coords(self, coeffs) -> int:
        if len(coeffs) != self.j:
            raise FieldError(f"expected {self.j} coordinates, got {len(coeffs)}")
        if any(not 0 <= c < self.p for c in coeffs):
            raise FieldError("coordinate out of range")
        return sum(c * w for c, w in zip(coeffs, self._pw))

    def elem(self, value) -> FieldElem:
        """Wrap an integer code or a coordinate sequence."""
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise FieldError("element out of range")
            return FieldElem(self, value)
        return FieldElem(self, self.from_coords(tuple(value)))

    def as_poly(self, a: int) -> list[int]:
        return _trim(list(self.coords(a)))

    def from_poly(self, a: list[int]) -> int:
        return sum((c % self.p) * w for c, w in zip(a, self._pw))

    # tables

    @cached_property
    def _add_table(self):
        if self.q > _ADD_TABLE_LIMIT:
            return None
        dig = self.digit_matrix()
        s = (dig[:, None, :] + dig[None, :, :]) % self.p
        return (s @ np.array(self._pw, dtype=np.int64)).astype(np.int64)

    @cached_property
    def _neg_table(self):
        dig = self.digit_matrix()
        return ((-dig) % self.p) @ np.array(self._pw, dtype=np.int64)

    def digit_matrix(self) -> np.ndarray:
        """q x j array of coordinates of every element, row a = coords(a)."""
        vals = np.arange(self.q, dtype=np.int64)
        return np.stack([(vals // w) % self.p for w in self._pw], axis=1)

    def mult_matrix(self, c: int) -> np.ndarray:
        """Matrix M over F_p with coords(c*a) = coords(a) @ M."""
        cp = self.as_poly(c)
        rows = []
        for i in range(self.j):
            xi = [0] * i + [1]
            prod = _pmulmod(cp, xi, list(self.modulus), self.p)
            rows.append(list(prod) + [0] * (self.j - len(prod)))
        return np.array(rows, dtype=np.int64)

    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of a -> a^p, which is F_p-linear."""
        rows = []
        for i in range(self.j):
            xi = [0] * i + [1]
            img = _ppowmod(xi, self.p, list(self.modulus), self.p)
            rows.append(list(img) + [0] * (self.j - len(img)))
        return np.array(rows, dtype=np.int64)

    @cached_property
    def generator(self) -> int:
        """Least element (in code order) generating the multiplicative group."""
        n = self.q - 1
        if n == 1:
            return 1
        factors = prime_factors(n)
        m = list(self.modulus)
        for g in range(2, self.q):
            gp = self.as_poly(g)
            if all(_ppowmod(gp, n // r, m, self.p) != [1] for r in factors):
                return g
        raise AssertionError("multiplicative group is not cyclic")  # unreachable

    @cached_property
    def _tables(self):
        """(exp, log) arrays with log[0] a sentinel that sends products to 0."""
        n = self.q - 1
        if self.j == 1:
            exp = np.empty(n, dtype=np.int64)
            acc = 1
            for k in range(n):
                exp[k] = acc
                acc = acc * self.generator % self.p
        else:
            exp = self._power_table(self.generator, n)
        log = np.empty(self.q, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        log[0] = 2 * n
        full = np.zeros(4 * n + 1, dtype=np.int64)
        full[:n] = exp
        full[n : 2 * n] = exp
        return full, log

    def _power_table(self, g: int, n: int) -> np.ndarray:
        # Baby steps g^0..g^(B-1), then giant steps by the matrix of g^B.
        p = self.p
        pw = np.array(self._pw, dtype=np.int64)
        B = max(1, math.isqrt(n))
        M = self.mult_matrix(g)
        baby = np.zeros((B, self.j), dtype=np.int64)
        v = np.zeros(self.j, dtype=np.int64)
        v[0] = 1
        for i in range(B):
            baby[i] = v
            v = (v @ M) % p
        MB = self.mult_matrix(int(v @ pw))
        blocks = []
        cur = baby
        for _ in range(-(-n // B)):
            blocks.append(cur)
            cur = (cur @ MB) % p
        return (np.concatenate(blocks)[:n] @ pw).astype(np.int64)

    @cached_property
    def _exp_list(self) -> list[int]:
        return self._tables[0].tolist()

    @cached_property
    def _log_list(self) -> list[int]:
        return self._tables[1].tolist()

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if self.j == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self._add_table
        if t is not None:
            return int(t[a, b])
        p = self.p
        return sum(((a // w + b // w) % p) * w for w in self._pw)

    def neg(self, a: int) -> int:
        if self.j == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return int(self._neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.j == 1:
            return a * b % self.p
        lg = self._log_list
        return self._exp_list[lg[a] + lg[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.j == 1:
            return pow(a, -1, self.p)
        n = self.q - 1
        return self._exp_list[(n - self._log_list[a]) % n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply; negative exponents invert first."""
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    # vectorized arithmetic on int64 arrays

    def vadd(self, a, b):
        if self.j == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self._add_table
        if t is not None:
            return t[a, b]
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._pw:
            out += ((a // w + b // w) % p) * w
        return out

    def vneg(self, a):
        if self.j == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._neg_table[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.j == 1:
            return a * b % self.p
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def vinv(self, a):
        """Inverse, with 0 mapped to 0."""
        exp, log = self._tables
        n = self.q - 1
        la = log[a]
        out = exp[(n - la) % n]
        return np.where(la == 2 * n, 0, out)

    # subfields

    def subfield_degree(self, a: int) -> int:
        """Least m dividing j with a^(p^m) = a."""
        for m in divisors(self.j):
            if self.frobenius(a, m) == a:
                return m
        raise AssertionError("Frobenius orbit did not close")  # unreachable

    def subfield_degrees(self) -> np.ndarray:
        """subfield_degree of every element, indexed by element code."""
        dig = self.digit_matrix()
        F = self.frobenius_matrix()
        out = np.full(self.q, self.j, dtype=np.int64)
        for m in sorted(divisors(self.j), reverse=True)[1:]:
            Fm = _matpow_mod(F, m, self.p)
            fixed = np.all((dig @ Fm) % self.p == dig, axis=1)
            out[fixed] = m
        return out


def _matpow_mod(M: np.ndarray, e: int, p: int) -> np.ndarray:
    R = np.eye(M.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            R = (R @ M) % p
        M = (M @ M) % p
        e >>= 1
    return R


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coords(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldError("elements from different fields")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p  # prime-subfield constant
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElem({list(self.coeffs)} in F_{self.ctx.q})"


_FIELDS: dict[tuple[int, int], FieldCtx] = {}


def make_field(p: int, j: int = 1) -> FieldCtx:
    """F_{p^j} with the lexicographically least monic irreducible modulus.

    Contexts are cached, so repeated calls return the same object.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(j, int) or not 1 <= j <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in [1, {MAX_DEGREE}], got {j!r}")
    if p**j > MAX_CARDINALITY:
        raise FieldError(f"p^j = {p**j} exceeds the cap {MAX_CARDINALITY}")
    key = (p, j)
    if key not in _FIELDS:
        _FIELDS[key] = FieldCtx(p, j, least_irreducible(p, j))
    return _FIELDS[key]


def field_arith(a: FieldElem, b, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a**b
    raise ValueError(f"unknown op {op!r}")


def subfield_degree(a: FieldElem) -> int:
    return a.ctx.subfield_degree(a.value)


def count_proper_subfield_elements(ctx: FieldCtx) -> int:
    """Number of elements lying in a proper subfield; 0 for prime fields."""
    if ctx.j == 1:
        return 0
    return int(np.count_nonzero(ctx.subfield_degrees() < ctx.j))
