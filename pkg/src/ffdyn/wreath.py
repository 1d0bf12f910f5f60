"""Iterated wreath products [S_d]^n acting on [d]^n.

A point of [d]^n is a tuple ``(s..., t)`` whose last coordinate t is the
outermost one.  An element at level n > 1 is a pair (branches, top): it moves
t by ``top`` and the prefix s by ``branches[t]``, the branch selected by the
original t.  A level-1 element carries only ``top``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded

Perm = tuple[int, ...]

BRUTEFORCE_BUDGET = 10**7
EXACT_BITS_BUDGET = 1 << 18


@dataclass(frozen=True)
class WreathElem:
    top: Perm
    branches: tuple[WreathElem, ...] = ()

    @property
    def d(self) -> int:
        return len(self.top)

    @property
    def level(self) -> int:
        return 1 if not self.branches else self.branches[0].level + 1

    def __post_init__(self):
        if sorted(self.top) != list(range(len(self.top))):
            raise ValueError(f"{self.top} is not a permutation")
        if self.branches:
            if len(self.branches) != len(self.top):
                raise ValueError("need exactly d branches")
            lv = self.branches[0].level
            if any(b.level != lv or b.d != self.d for b in self.branches):
                raise ValueError("branches have inconsistent shape")


def identity(d: int, n: int) -> WreathElem:
    e = WreathElem(tuple(range(d)))
    for _ in range(n - 1):
        e = WreathElem(tuple(range(d)), (e,) * d)
    return e


def act(w: WreathElem, pt) -> tuple[int, ...]:
    pt = tuple(pt)
    if len(pt) != w.level or any(not 0 <= x < w.d for x in pt):
        raise ValueError(f"point {pt} does not lie in [{w.d}]^{w.level}")
    return _act(w, pt)


def _act(w: WreathElem, pt: tuple[int, ...]) -> tuple[int, ...]:
    t = pt[-1]
    if not w.branches:
        return (w.top[t],)
    return _act(w.branches[t], pt[:-1]) + (w.top[t],)


def compose(w: WreathElem, v: WreathElem) -> WreathElem:
    """The element acting as w after v."""
    top = tuple(w.top[i] for i in v.top)
    if not w.branches:
        return WreathElem(top)
    branches = tuple(compose(w.branches[v.top[t]], v.branches[t]) for t in range(w.d))
    return WreathElem(top, branches)


def elements(d: int, n: int) -> Iterator[WreathElem]:
    perms = list(itertools.permutations(range(d)))
    if n == 1:
        for h in perms:
            yield WreathElem(h)
        return
    lower = list(elements(d, n - 1))
    for branches in itertools.product(lower, repeat=d):
        for h in perms:
            yield WreathElem(h, branches)


def group_order(d: int, n: int) -> int:
    return math.factorial(d) ** ((d**n - 1) // (d - 1))


def has_fixed_point(w: WreathElem) -> bool:
    return any(_act(w, pt) == pt for pt in itertools.product(range(w.d), repeat=w.level))


@dataclass(frozen=True)
class FixReport:
    d: int
    n: int
    fix_value: Fraction
    group_order: int
    bound: Fraction
    method: str


def point_index(pt, d: int) -> int:
    """Row position of a point in action_table: sum of pt[i] d^i."""
    return sum(x * d**i for i, x in enumerate(pt))


def _level_rows(perms: np.ndarray, lower: np.ndarray, b0: int) -> np.ndarray:
    # rows for every element whose branch 0 is lower[b0], in elements() order
    M, D = lower.shape
    nperm, d = perms.shape
    rest = np.indices((M,) * (d - 1)).reshape(d - 1, -1).T
    br = np.concatenate([np.full((len(rest), 1), b0), rest], axis=1)
    img = lower[br][:, None, :, :] + D * perms[None, :, :, None]
    return img.reshape(len(rest) * nperm, d * D)


def action_table(d: int, n: int) -> np.ndarray:
    """Row k is the permutation of [d]^n induced by the k-th element of elements(d, n)."""
    perms = np.array(list(itertools.permutations(range(d))), dtype=np.int32)
    table = perms
    for _ in range(n - 1):
        table = np.concatenate([_level_rows(perms, table, b) for b in range(len(table))])
    return table


def fix_bruteforce(d: int, n: int, budget: int = BRUTEFORCE_BUDGET) -> FixReport:
    """Count the elements of [S_d]^n with a fixed point by checking every point."""
    order = group_order(d, n)
    if order > budget:
        raise BudgetExceeded(f"|[S_{d}]^{n}| = {order} exceeds budget {budget}")
    if n == 1:
        blocks = [action_table(d, 1)]
    else:
        perms = np.array(list(itertools.permutations(range(d))), dtype=np.int32)
        lower = action_table(d, n - 1)
        blocks = (_level_rows(perms, lower, b) for b in range(len(lower)))
    count = total = 0
    for rows in blocks:
        total += len(rows)
        count += int(np.any(rows == np.arange(rows.shape[1]), axis=1).sum())
    assert total == order
    return FixReport(d, n, Fraction(count, total), order, Fraction(2, n + 2), "bruteforce")


def partitions(d: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = d if largest is None else largest
    if d == 0:
        yield ()
        return
    for k in range(min(d, largest), 0, -1):
        for rest in partitions(d - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def fixed_point_classes(d: int) -> tuple[tuple[int, int], ...]:
    """(class size, number of fixed points) for each cycle type of S_d."""
    out = []
    for lam in partitions(d):
        mult = {k: lam.count(k) for k in set(lam)}
        centralizer = math.prod(k**m * math.factorial(m) for k, m in mult.items())
        out.append((math.factorial(d) // centralizer, mult.get(1, 0)))
    return tuple(out)


def _step(d: int, f: Fraction) -> Fraction:
    # P(some fixed t carries a branch with a fixed point), branches independent
    miss = 1 - f
    total = sum(size * (1 - miss**fp) for size, fp in fixed_point_classes(d))
    return total / math.factorial(d)


def fix_sequence(d: int, n: int, max_bits: int = EXACT_BITS_BUDGET) -> list[Fraction]:
    """Exact [f_1, ..., f_n]; f_0 = 1 seeds the recursion."""
    if not 2 <= d <= 12:
        raise BudgetExceeded(f"d = {d} outside [2, 12]")
    f = Fraction(1)
    out = []
    for k in range(1, n + 1):
        f = _step(d, f)
        if f.denominator.bit_length() > max_bits:
            raise BudgetExceeded(f"exact f_{k} for d={d} needs over {max_bits} bits")
        out.append(f)
    return out


def fix_recursive(d: int, n: int, max_bits: int = EXACT_BITS_BUDGET) -> FixReport:
    f = fix_sequence(d, n, max_bits)[-1]
    return FixReport(d, n, f, group_order(d, n), Fraction(2, n + 2), "recursion")


def fix_enclosure(d: int, n: int, bits: int = 256) -> list[tuple[Fraction, Fraction]]:
    """Rational intervals [lo_k, hi_k] containing f_k, for k = 1..n.

    The step map is increasing on [0, 1], so pushing the endpoints through it
    and rounding outward to multiples of 2^-bits keeps f_k enclosed.  Values
    are exact (lo = hi) until their denominators outgrow 2^bits.
    """
    if not 2 <= d <= 12:
        raise BudgetExceeded(f"d = {d} outside [2, 12]")
    scale = 1 << bits
    lo = hi = Fraction(1)
    out = []
    for _ in range(n):
        lo, hi = _step(d, lo), _step(d, hi)
        if lo.denominator > scale:
            lo = Fraction(math.floor(lo * scale), scale)
        if hi.denominator > scale:
            hi = Fraction(math.ceil(hi * scale), scale)
        out.append((lo, hi))
    return out


@dataclass(frozen=True)
class FixBound:
    d: int
    n: int
    holds: bool
    gap: Fraction  # 2/(n+2) - f_n, or a lower bound on it when not exact
    exact: bool


def check_fix_bound(d: int, n: int, bits: int = 256) -> FixBound:
    """Decide f_n < 2/(n+2) exactly, from the enclosure's upper end."""
    bound = Fraction(2, n + 2)
    lo, hi = fix_enclosure(d, n, bits)[-1]
    if hi < bound:
        return FixBound(d, n, True, bound - hi, lo == hi)
    if lo >= bound:
        return FixBound(d, n, False, bound - hi, lo == hi)
    raise BudgetExceeded(f"enclosure at {bits} bits too wide to decide d={d}, n={n}")
