"""Ensembles of all degree-d maps over F_{p^j}: counts, enumeration,
sampling, exact and sampled mean periodic proportions, and bad-locus scans.

Maps are indexed by *canonical slots*: coefficient pairs (f, g) already in
the canonical scaling of :func:`ffdyn.projmap.normalize`.  For rational maps
the slots fall into three families,

    A  deg g = d, g monic            q^(2d+1) slots
    B  g = 1, deg f = d              (q-1) q^d slots
    C  1 <= deg g < d, f monic       q^d (q^d - q) slots

and a slot is a map exactly when gcd(f, g) = 1 (always true in family B).
Polynomial maps are family B alone.  Every map occupies exactly one slot, so
scanning or uniformly sampling valid slots enumerates or samples maps.

Heavy lifting is vectorized: a batch of slots becomes coefficient arrays, a
Sylvester-rank test filters coprime pairs, and periodic counts come from
repeated squaring of the functional graph.  The scalar per-map path in
:mod:`ffdyn.dynamics` is the oracle these batches are tested against.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import poly
from .errors import BudgetExceeded
from .ffield import FieldCtx, make_field
from .projmap import RatMap, normalize

KINDS = ("polynomial", "rational")
DEFAULT_BUDGET = 10**7
MAX_REJECTIONS = 10**6
_CHUNK_CELLS = 1 << 21  # batch rows x points per numpy pass


class HypothesisWarning(UserWarning):
    """gcd(q, d!) != 1, so the means need not tend to 0 as j grows."""


@dataclass(frozen=True)
class EnsembleSpec:
    p: int
    j: int
    d: int
    kind: str = "rational"
    mode: str = "exhaustive"
    n_samples: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("ensembles need d >= 2")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError("mode must be 'exhaustive' or 'sampled'")
        if self.mode == "sampled" and self.n_samples < 2:
            raise ValueError("sampled mode needs at least 2 samples")
        make_field(self.p, self.j)  # validates p and j

    @property
    def ctx(self) -> FieldCtx:
        return make_field(self.p, self.j)

    @property
    def q(self) -> int:
        return self.p**self.j

    @property
    def coprime(self) -> bool:
        return math.gcd(self.q, math.factorial(self.d)) == 1

    def warn_if_not_coprime(self) -> None:
        if not self.coprime:
            warnings.warn(
                f"gcd({self.q}, {self.d}!) != 1: the hypothesis gcd(q, d!) = 1 fails",
                HypothesisWarning,
                stacklevel=3,
            )


def count_maps(q: int, d: int, kind: str) -> int:
    """Closed-form number of maps of degree exactly d over F_q."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if kind == "rational":
        return q ** (2 * d - 1) * (q * q - 1)
    if kind == "polynomial":
        return q**d * (q - 1)
    raise ValueError(f"kind must be one of {KINDS}")


# --- canonical slots ---------------------------------------------------------


def slot_count(q: int, d: int, kind: str) -> int:
    b = (q - 1) * q**d
    if kind == "polynomial":
        return b
    return q ** (2 * d + 1) + b + q**d * (q**d - q)


def _digits(x: np.ndarray, q: int, n: int) -> np.ndarray:
    """Base-q digits of x, least significant first, shape x.shape + (n,)."""
    out = np.empty(x.shape + (n,), dtype=np.int64)
    for i in range(n):
        out[..., i] = x % q
        x = x // q
    return out


def decode_slots(q: int, d: int, kind: str, idx: np.ndarray):
    """Coefficient arrays (f, g), each (len(idx), d+1) low-to-high, per slot.

    Also returns a mask of slots that are coprime by construction.
    """
    idx = np.asarray(idx, dtype=np.int64)
    B = len(idx)
    f = np.zeros((B, d + 1), dtype=np.int64)
    g = np.zeros((B, d + 1), dtype=np.int64)
    nA = 0 if kind == "polynomial" else q ** (2 * d + 1)
    nB = (q - 1) * q**d

    inA = idx < nA
    inB = (idx >= nA) & (idx < nA + nB)
    inC = idx >= nA + nB

    r = idx[inA]
    f[inA] = _digits(r % q ** (d + 1), q, d + 1)
    g[inA, :d] = _digits(r // q ** (d + 1), q, d)
    g[inA, d] = 1

    r = idx[inB] - nA
    f[inB, :d] = _digits(r % q**d, q, d)
    f[inB, d] = 1 + r // q**d
    g[inB, 0] = 1

    r = idx[inC] - nA - nB
    f[inC, :d] = _digits(r % q**d, q, d)
    f[inC, d] = 1
    g[inC, :d] = _digits(r // q**d + q, q, d)
    return f, g, inB


def vectorized_singular(F: FieldCtx, M: np.ndarray) -> np.ndarray:
    """Per-matrix singularity for a batch M of shape (B, n, n) over F."""
    M = M.copy()
    B, n, _ = M.shape
    rows = np.arange(B)
    singular = np.zeros(B, dtype=bool)
    for col in range(n):
        nz = M[:, col:, col] != 0
        singular |= ~nz.any(axis=1)
        piv = col + np.argmax(nz, axis=1)
        top = M[rows, col, col:].copy()
        M[rows, col, col:] = M[rows, piv, col:]
        M[rows, piv, col:] = top
        if col + 1 == n:
            break
        inv = F.vinv(M[:, col, col])
        factor = F.vmul(M[:, col + 1 :, col], inv[:, None])
        M[:, col + 1 :, col:] = F.vsub(
            M[:, col + 1 :, col:], F.vmul(factor[:, :, None], M[:, None, col, col:])
        )
    return singular


def sylvester_batch(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Batched Sylvester matrices at formal degrees (d, d)."""
    B, d1 = f.shape
    d = d1 - 1
    M = np.zeros((B, 2 * d, 2 * d), dtype=np.int64)
    fh, gh = f[:, ::-1], g[:, ::-1]
    for s in range(d):
        M[:, s, s : s + d + 1] = fh
        M[:, d + s, s : s + d + 1] = gh
    return M


def coprime_mask(F: FieldCtx, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Homogeneous resultant != 0: gcd(f, g) = 1 and max degree d."""
    return ~vectorized_singular(F, sylvester_batch(f, g))


def image_batch(F: FieldCtx, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Functional graphs (B, q+1) of the maps f/g, all assumed valid."""
    B, d1 = f.shape
    d = d1 - 1
    q = F.q
    xs = np.arange(q, dtype=np.int64)[None, :]

    def horner(c):
        acc = np.broadcast_to(c[:, d : d + 1], (B, q)).copy()
        for k in range(d - 1, -1, -1):
            acc = F.vadd(F.vmul(acc, xs), c[:, k : k + 1])
        return acc

    X, Y = horner(f), horner(g)
    out = np.empty((B, q + 1), dtype=np.int64)
    out[:, :q] = np.where(Y != 0, F.vmul(X, F.vinv(Y)), q)
    lf, lg = f[:, d], g[:, d]
    out[:, q] = np.where(lg != 0, F.vmul(lf, F.vinv(lg)), q)
    return out


def periodic_counts(img: np.ndarray) -> np.ndarray:
    """|Per| per row of a batch of functional graphs.

    img^(2^k) with 2^k >= number of points maps everything into the cycles
    and hits every periodic point, so its image is the periodic set.
    """
    B, N = img.shape
    P = img
    reach = 1
    while reach < N:
        P = np.take_along_axis(P, P, axis=1)
        reach *= 2
    mark = np.zeros(B * N, dtype=bool)
    mark[(np.arange(B)[:, None] * N + P).ravel()] = True
    return mark.reshape(B, N).sum(axis=1)


def _chunk_rows(q: int, d: int) -> int:
    return max(1, _CHUNK_CELLS // ((q + 1) * max(1, d)))


# --- enumeration ---------------------------------------------------------------


def _check_budget(spec: EnsembleSpec, budget: int) -> None:
    n = count_maps(spec.q, spec.d, spec.kind)
    if n > budget:
        raise BudgetExceeded(
            f"{n} {spec.kind} maps of degree {spec.d} over F_{spec.q} exceed budget {budget}"
        )


def _valid_slots(F: FieldCtx, d: int, kind: str, start: int, stop: int):
    idx = np.arange(start, stop, dtype=np.int64)
    f, g, sure = decode_slots(F.q, d, kind, idx)
    ok = sure.copy()
    rest = ~sure
    if rest.any():
        ok[rest] = coprime_mask(F, f[rest], g[rest])
    return f[ok], g[ok]


def enumerate_maps(spec: EnsembleSpec, budget: int = DEFAULT_BUDGET) -> Iterator[RatMap]:
    """Every degree-d map exactly once, in slot order."""
    if spec.mode != "exhaustive":
        raise ValueError("enumerate_maps needs an exhaustive spec")
    _check_budget(spec, budget)
    F, d = spec.ctx, spec.d
    total = slot_count(F.q, d, spec.kind)
    step = _chunk_rows(F.q, d)
    for start in range(0, total, step):
        f, g = _valid_slots(F, d, spec.kind, start, min(total, start + step))
        for fr, gr in zip(f.tolist(), g.tolist()):
            yield RatMap(F, tuple(poly.trim(fr)), tuple(poly.trim(gr)), d)


def count_enumerated(p: int, j: int, d: int, kind: str) -> int:
    """Number of valid canonical slots, counted by scanning all of them."""
    F = make_field(p, j)
    total = slot_count(F.q, d, kind)
    step = _chunk_rows(F.q, d)
    return sum(
        len(_valid_slots(F, d, kind, s, min(total, s + step))[0]) for s in range(0, total, step)
    )


def slot_is_valid(F: FieldCtx, d: int, f, g) -> bool:
    return poly.resultant(F, f, g, d, d) != 0


def sample_map(spec: EnsembleSpec, index: int) -> RatMap:
    """Uniform random map, a pure function of (seed, index).

    Draws canonical slots uniformly and rejects non-coprime ones, which is
    exactly uniform on maps since each map has one slot.
    """
    F, d = spec.ctx, spec.d
    rng = np.random.default_rng([spec.seed, index])
    n = slot_count(F.q, d, spec.kind)
    for _ in range(MAX_REJECTIONS):
        s = int(rng.integers(n))
        f, g, _ = decode_slots(F.q, d, spec.kind, np.array([s]))
        f, g = f[0].tolist(), g[0].tolist()
        if slot_is_valid(F, d, f, g):
            phi = normalize(F, f, g)
            assert phi is not None and phi.num == tuple(poly.trim(f)) and phi.d == d
            return phi
    raise RuntimeError(f"no valid map after {MAX_REJECTIONS} draws")


# --- averages ------------------------------------------------------------------


@dataclass
class _Tally:
    maps: int = 0
    total: int = 0  # sum of periodic counts
    total_sq: int = 0
    hist: dict[int, int] = field(default_factory=dict)

    def add_counts(self, counts: np.ndarray) -> None:
        self.maps += len(counts)
        self.total += int(counts.sum())
        self.total_sq += int((counts.astype(np.int64) ** 2).sum())
        for c, k in zip(*np.unique(counts, return_counts=True)):
            self.hist[int(c)] = self.hist.get(int(c), 0) + int(k)

    def merge(self, other: _Tally) -> None:
        self.maps += other.maps
        self.total += other.total
        self.total_sq += other.total_sq
        for c, k in other.hist.items():
            self.hist[c] = self.hist.get(c, 0) + k


@dataclass
class EnsembleReport:
    spec: EnsembleSpec
    map_count: int  # distinct maps averaged (exhaustive) or samples drawn
    mean_periodic_proportion: Fraction  # exact mean, or exact sample mean
    stderr: float  # 0.0 when exhaustive
    histogram: dict[int, int]  # periodic count -> number of maps
    bad_reduction_tuple_count: Optional[int] = None
    non_generating_tuple_count: Optional[int] = None

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def mean(self) -> float:
        return float(self.mean_periodic_proportion)


def _exhaustive_shard(p, j, d, kind, start, stop) -> _Tally:
    F = make_field(p, j)
    tally = _Tally()
    step = _chunk_rows(F.q, d)
    for s in range(start, stop, step):
        f, g = _valid_slots(F, d, kind, s, min(stop, s + step))
        if len(f):
            tally.add_counts(periodic_counts(image_batch(F, f, g)))
    return tally


def _sampled_shard(spec: EnsembleSpec, start: int, stop: int) -> _Tally:
    F, d = spec.ctx, spec.d
    tally = _Tally()
    step = _chunk_rows(F.q, d)
    for s in range(start, stop, step):
        maps = [sample_map(spec, i) for i in range(s, min(stop, s + step))]
        f = np.array([list(m.num) + [0] * (d + 1 - len(m.num)) for m in maps], dtype=np.int64)
        g = np.array([list(m.den) + [0] * (d + 1 - len(m.den)) for m in maps], dtype=np.int64)
        tally.add_counts(periodic_counts(image_batch(F, f, g)))
    return tally


def _shards(total: int, workers: int) -> list[tuple[int, int]]:
    k = max(1, workers)
    bounds = [total * i // k for i in range(k + 1)]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]


def _run(fn, argsets, workers: int) -> _Tally:
    out = _Tally()
    if workers <= 1 or len(argsets) <= 1:
        for args in argsets:
            out.merge(fn(*args))
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for t in ex.map(fn, *zip(*argsets)):
                out.merge(t)
    return out


def average_periodic(
    spec: EnsembleSpec, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> EnsembleReport:
    """Mean of |Per|/|P^1| over the ensemble; exact when exhaustive.

    Results are identical for every worker count: shards are index ranges
    and merging is integer addition.
    """
    spec.warn_if_not_coprime()
    N = spec.q + 1
    if spec.mode == "exhaustive":
        _check_budget(spec, budget)
        total = slot_count(spec.q, spec.d, spec.kind)
        argsets = [(spec.p, spec.j, spec.d, spec.kind, a, b) for a, b in _shards(total, workers)]
        tally = _run(_exhaustive_shard, argsets, workers)
        assert tally.maps == count_maps(spec.q, spec.d, spec.kind)
        mean = Fraction(tally.total, tally.maps * N)
        return EnsembleReport(spec, tally.maps, mean, 0.0, dict(sorted(tally.hist.items())))

    n = spec.n_samples
    argsets = [(spec, a, b) for a, b in _shards(n, workers)]
    tally = _run(_sampled_shard, argsets, workers)
    mean = Fraction(tally.total, n * N)
    var = Fraction(tally.total_sq * n - tally.total**2, n * (n - 1) * N * N)
    stderr = math.sqrt(var / n)
    return EnsembleReport(spec, n, mean, stderr, dict(sorted(tally.hist.items())))


# --- bad locus -----------------------------------------------------------------


@dataclass(frozen=True)
class BadLocusReport:
    p: int
    j: int
    d: int
    kind: str
    tuple_count: int
    non_generating_count: int
    bad_reduction_count: int
    bound: int  # for polynomials, the square of the (irrational) bound

    @property
    def bound_holds(self) -> bool:
        if self.kind == "rational":
            return self.non_generating_count <= self.bound
        return self.non_generating_count**2 <= self.bound


def locus_bound(p: int, j: int, d: int, kind: str = "rational") -> int:
    """2^(2d+2) q^(j(d+1)) for rational tuples; for polynomial tuples the
    square 4^(d+1) q^(j(d+1)) of 2^(d+1) q^(j(d+1)/2), so comparisons stay exact."""
    return 2 ** (2 * d + 2) * p ** (j * (d + 1))


def bad_locus_report(
    p: int, j: int, d: int, kind: str = "rational", budget: int = DEFAULT_BUDGET
) -> BadLocusReport:
    """Scan every coefficient tuple in F_{p^j}^(2d+2) (or ^(d+1) for polynomials)."""
    F = make_field(p, j)
    q = F.q
    L = 2 * d + 2 if kind == "rational" else d + 1
    total = q**L
    if total > budget:
        raise BudgetExceeded(f"{total} tuples exceed budget {budget}")
    degs = F.subfield_degrees()
    non_gen = bad = 0
    step = max(1, _CHUNK_CELLS // (L * L))
    for start in range(0, total, step):
        idx = np.arange(start, min(total, start + step), dtype=np.int64)
        tup = _digits(idx, q, L)[:, ::-1]  # column 0 is the most significant: a_d
        lcm = np.ones(len(idx), dtype=np.int64)
        for c in range(L):
            lcm = np.lcm(lcm, degs[tup[:, c]])
        non_gen += int(np.count_nonzero(lcm != j))
        if kind == "rational":
            f = tup[:, d::-1]  # a_0..a_d
            g = tup[:, : d : -1]  # b_0..b_d
            bad += int(np.count_nonzero(~coprime_mask(F, f, g)))
        else:
            bad += int(np.count_nonzero(tup[:, 0] == 0))
    return BadLocusReport(p, j, d, kind, total, non_gen, bad, locus_bound(p, j, d, kind))
