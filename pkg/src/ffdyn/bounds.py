"""Image-size inequalities for concrete maps, evaluated under the generic
Galois group G = [S_d]^n and its fixed-point proportion f_n.

Every result here is DIAGNOSTIC: the true group of phi^n(X) - t for a
particular phi is not computed, so a violated inequality flags a map whose
group is not generic rather than an error.  Comparisons against q^(1/2) and
q^(3/2) are made exactly by squaring both (non-negative) sides.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .dynamics import iterated_image_size
from .ensemble import DEFAULT_BUDGET, EnsembleSpec, enumerate_maps, sample_map
from .projmap import RatMap, derivative_is_zero, map_to_text
from .wreath import fix_recursive, group_order


class BoundRefused(ValueError):
    """The map or parameters fall outside the inequality's hypotheses."""


@dataclass(frozen=True)
class BoundCheck:
    q: int
    d: int
    n: int
    image_size: int
    image_ratio: Fraction
    assumed_fix: Fraction
    assumed_group_order: int
    lhs_absolute: Fraction
    lhs_relative: Fraction
    rhs_constant: int  # 7 n d |G|
    satisfied_abs: bool
    satisfied_rel: bool
    vacuous_abs: bool
    vacuous_rel: bool

    @property
    def rhs_absolute(self) -> float:
        """7nd|G| / q^(1/2), approximate."""
        return self.rhs_constant / math.sqrt(self.q)

    @property
    def rhs_relative(self) -> float:
        """7nd|G| f / q^(3/2), approximate."""
        return self.rhs_constant * float(self.assumed_fix) / self.q**1.5


def check_hypotheses(q: int, d: int) -> None:
    if math.gcd(q, math.factorial(d)) != 1:
        raise BoundRefused(f"gcd({q}, {d}!) != 1: tame ramification cannot be assumed")


def bound_check(phi: RatMap, n: int) -> BoundCheck:
    q, d = phi.ctx.q, phi.d
    if n < 1:
        raise ValueError("n must be >= 1")
    check_hypotheses(q, d)
    if derivative_is_zero(phi):
        raise BoundRefused(f"{map_to_text(phi)} is inseparable (phi' = 0)")

    size = iterated_image_size(phi, n)
    f = fix_recursive(d, n).fix_value
    G = group_order(d, n)
    C = 7 * n * d * G
    ratio = Fraction(size, q + 1)
    lhs_abs = abs(size / f - (q + 1))
    lhs_rel = abs(ratio - f)

    # lhs_abs < C / sqrt(q)       <=>  lhs_abs^2 q < C^2
    # lhs_rel < C f / q^(3/2)     <=>  lhs_rel^2 q^3 < C^2 f^2
    sat_abs = lhs_abs**2 * q < C**2
    sat_rel = lhs_rel**2 * q**3 < C**2 * f**2
    # Largest possible left sides over image sizes 1..q+1.
    worst_abs = (q + 1) * max(1 / f - 1, Fraction(1))
    worst_rel = max(1 - f, f)
    vac_abs = C**2 >= worst_abs**2 * q
    vac_rel = C**2 * f**2 >= worst_rel**2 * q**3
    return BoundCheck(
        q, d, n, size, ratio, f, G, lhs_abs, lhs_rel, C, sat_abs, sat_rel, vac_abs, vac_rel
    )


@dataclass
class BoundSurvey:
    spec: EnsembleSpec
    n: int
    rows: list[tuple[str, BoundCheck]]
    skipped_inseparable: int

    @property
    def fraction_abs(self) -> Fraction:
        return Fraction(sum(c.satisfied_abs for _, c in self.rows), len(self.rows))

    @property
    def fraction_rel(self) -> Fraction:
        return Fraction(sum(c.satisfied_rel for _, c in self.rows), len(self.rows))

    @property
    def lhs_relative_distribution(self) -> dict[Fraction, int]:
        return dict(sorted(Counter(c.lhs_relative for _, c in self.rows).items()))


def _survey_maps(spec: EnsembleSpec, budget: int) -> Iterable[RatMap]:
    if spec.mode == "exhaustive":
        return enumerate_maps(spec, budget)
    return (sample_map(spec, i) for i in range(spec.n_samples))


def bound_survey(spec: EnsembleSpec, n: int, budget: int = DEFAULT_BUDGET) -> BoundSurvey:
    check_hypotheses(spec.q, spec.d)
    rows = []
    skipped = 0
    for phi in _survey_maps(spec, budget):
        if derivative_is_zero(phi):
            skipped += 1
            continue
        rows.append((map_to_text(phi), bound_check(phi, n)))
    return BoundSurvey(spec, n, rows, skipped)
