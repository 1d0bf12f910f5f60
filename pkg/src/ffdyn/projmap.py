"""The projective line over F_q and normalized rational maps acting on it.

Points of P^1(F_q) are indexed ``0..q``: a finite point [x : 1] has the index
of its element code x and infinity [1 : 0] has index q.  Coefficient tuples
for specialization are ordered high degree first, ``(a_d, ..., a_0, b_d, ...,
b_0)``, while RatMap stores coefficient sequences low degree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Optional, Sequence

import numpy as np

from . import poly
from .ffield import FieldCtx, FieldError


@dataclass(frozen=True)
class ProjPoint:
    """Canonical point: [x : 1] for finite x, [1 : 0] when x is None."""

    x: Optional[int] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def index(self, ctx: FieldCtx) -> int:
        return ctx.q if self.x is None else self.x

    @classmethod
    def from_index(cls, ctx: FieldCtx, i: int) -> ProjPoint:
        return cls(None) if i == ctx.q else cls(i)

    @classmethod
    def from_homogeneous(cls, ctx: FieldCtx, X: int, Y: int) -> ProjPoint:
        if Y == 0:
            if X == 0:
                raise ValueError("[0 : 0] is not a point")
            return cls(None)
        return cls(ctx.div(X, Y))

    def __repr__(self):
        return "ProjPoint(inf)" if self.x is None else f"ProjPoint({self.x})"


INFINITY = ProjPoint(None)


def points(ctx: FieldCtx) -> list[ProjPoint]:
    """All q+1 points, finite ones in element-code order, then infinity."""
    return [ProjPoint(x) for x in range(ctx.q)] + [INFINITY]


@dataclass(frozen=True)
class RatMap:
    """phi = num/den with gcd(num, den) = 1 and d = max of their degrees.

    Scaling is canonical: den is monic when deg den = d, den = 1 when den is
    constant, and otherwise num is monic.  Build instances with normalize().
    """

    ctx: FieldCtx
    num: tuple[int, ...]
    den: tuple[int, ...]
    d: int

    @property
    def is_polynomial(self) -> bool:
        return self.den == (1,)

    def _top(self, a) -> int:
        return a[self.d] if len(a) > self.d else 0

    def eval_index(self, i: int) -> int:
        F = self.ctx
        if i == F.q:
            X, Y = self._top(self.num), self._top(self.den)
        else:
            X, Y = poly.evaluate(F, self.num, i), poly.evaluate(F, self.den, i)
        if Y == 0:
            assert X != 0, "numerator and denominator share a zero"
            return F.q
        return F.div(X, Y)

    @cached_property
    def image_array(self) -> np.ndarray:
        """Image index of every point of P^1, as an int64 array of length q+1."""
        F = self.ctx
        xs = np.arange(F.q, dtype=np.int64)

        def horner(coeffs):
            acc = np.zeros(F.q, dtype=np.int64)
            for c in reversed(coeffs):
                acc = F.vadd(F.vmul(acc, xs), np.int64(c))
            return acc

        X, Y = horner(self.num), horner(self.den)
        out = np.empty(F.q + 1, dtype=np.int64)
        fin = Y != 0
        assert np.all(X[~fin] != 0), "numerator and denominator share a zero"
        out[: F.q] = np.where(fin, F.vmul(X, F.vinv(Y)), F.q)
        out[F.q] = self.eval_index(F.q)
        return out

    def images(self) -> list[int]:
        return self.image_array.tolist()

    def __str__(self):
        return map_to_text(self)


def normalize(ctx: FieldCtx, f: Sequence[int], g: Sequence[int]) -> Optional[RatMap]:
    """Reduce f/g to lowest terms in canonical scaling.

    Returns None when the reduced denominator is zero (f/0 is not a map).
    """
    f, g = poly.trim(f), poly.trim(g)
    if not f and not g:
        raise ValueError("f and g are both zero")
    if not g:
        return None
    h = poly.gcd(ctx, f, g)
    if len(h) > 1:
        f = poly.divmod_(ctx, f, h)[0]
        g = poly.divmod_(ctx, g, h)[0]
    d = max(len(f), len(g)) - 1
    if len(g) - 1 == d or len(g) == 1:
        c = ctx.inv(g[-1])
    else:
        c = ctx.inv(f[-1])
    return RatMap(ctx, tuple(poly.scale(ctx, f, c)), tuple(poly.scale(ctx, g, c)), d)


def polynomial_map(ctx: FieldCtx, f: Sequence[int]) -> RatMap:
    m = normalize(ctx, f, [1])
    assert m is not None
    return m


def evaluate(phi: RatMap, P: ProjPoint) -> ProjPoint:
    """phi(P), via the degree-d homogenizations of num and den."""
    return ProjPoint.from_index(phi.ctx, phi.eval_index(P.index(phi.ctx)))


def derivative_is_zero(phi: RatMap) -> bool:
    F = phi.ctx
    df, dg = poly.derivative(F, phi.num), poly.derivative(F, phi.den)
    wronskian = poly.sub(F, poly.mul(F, df, phi.den), poly.mul(F, phi.num, dg))
    return not wronskian


def resultant(ctx: FieldCtx, f: Sequence[int], g: Sequence[int]) -> int:
    """Res(f, g) via the Sylvester determinant at the actual degrees."""
    f, g = poly.trim(f), poly.trim(g)
    if not f and not g:
        raise ValueError("f and g are both zero")
    return poly.resultant(ctx, f, g)


def _split_tuple(a: Sequence[int], d: int) -> tuple[list[int], list[int]]:
    if len(a) == 2 * d + 2:
        return list(reversed(a[: d + 1])), list(reversed(a[d + 1 :]))
    if len(a) == d + 1:
        return list(reversed(a)), [1]
    raise ValueError(f"tuple of length {len(a)} does not fit degree {d}")


def specialize(ctx: FieldCtx, a: Sequence[int], d: int) -> Optional[RatMap]:
    """The map with coefficient tuple a, or None if it has bad reduction.

    Length 2d+2 reads a as (a_d..a_0, b_d..b_0), length d+1 as a polynomial.
    Good reduction means the normalized degree is still d.
    """
    f, g = _split_tuple(a, d)
    if not poly.trim(f) and not poly.trim(g):
        return None
    phi = normalize(ctx, f, g)
    if phi is None or phi.d != d:
        return None
    return phi


def has_good_reduction(ctx: FieldCtx, a: Sequence[int], d: int) -> bool:
    """Resultant-side test: Res(f, g) != 0 and max(deg f, deg g) = d."""
    f, g = _split_tuple(a, d)
    f, g = poly.trim(f), poly.trim(g)
    if max(len(f), len(g)) - 1 != d:
        return False
    return poly.resultant(ctx, f, g) != 0


def tuple_generates(ctx: FieldCtx, a: Sequence[int]) -> bool:
    """True iff the coordinates of a generate all of F_{p^j} over F_p."""
    L = reduce(math.lcm, (ctx.subfield_degree(x) for x in a), 1)
    return L == ctx.j


# --- text form: "d; f low-to-high; g low-to-high" ---------------------------


def _elem_text(ctx: FieldCtx, a: int) -> str:
    return ":".join(str(c) for c in ctx.coords(a))


def _poly_text(ctx: FieldCtx, a) -> str:
    return " ".join(_elem_text(ctx, c) for c in a) if a else _elem_text(ctx, 0)


def map_to_text(phi: RatMap) -> str:
    F = phi.ctx
    return f"{phi.d}; {_poly_text(F, phi.num)}; {_poly_text(F, phi.den)}"


def map_from_text(ctx: FieldCtx, text: str) -> RatMap:
    """Parse map_to_text output (or any unnormalized f/g in the same form)."""
    try:
        d_txt, f_txt, g_txt = (s.strip() for s in text.split(";"))
        d = int(d_txt)

        def parse(s):
            return [ctx.from_coords(tuple(int(c) for c in e.split(":"))) for e in s.split()]

        f, g = parse(f_txt), parse(g_txt)
    except (ValueError, FieldError) as exc:
        raise ValueError(f"cannot parse map {text!r}: {exc}") from exc
    phi = normalize(ctx, f, g)
    if phi is None or phi.d != d:
        raise ValueError(f"{text!r} does not describe a map of degree {d}")
    return phi
