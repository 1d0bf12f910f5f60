"""Functional-graph analysis of a single map on P^1.

Most functions accept either a RatMap or its functional graph directly, given
as a sequence ``img`` with ``img[i]`` the image of point index i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .projmap import ProjPoint, RatMap

Graph = Union[RatMap, Sequence[int], np.ndarray]


def _graph(phi: Graph) -> list[int]:
    if isinstance(phi, RatMap):
        return phi.images()
    if isinstance(phi, np.ndarray):
        return phi.tolist()
    return list(phi)


def cycles(phi: Graph) -> list[list[int]]:
    """Every cycle of the functional graph, each listed once in orbit order.

    Three-colour walk: points are unvisited, on the current path, or done.  A
    walk that runs into its own path has closed a new cycle; one that runs
    into a finished point has found only tail.
    """
    img = _graph(phi)
    n = len(img)
    state = [0] * n  # 0 unvisited, 1 on current path, 2 done
    found = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        pos = {}
        x = start
        while state[x] == 0:
            state[x] = 1
            pos[x] = len(path)
            path.append(x)
            x = img[x]
        if state[x] == 1:
            found.append(path[pos[x] :])
        for y in path:
            state[y] = 2
    return found


def periodic_indices(phi: Graph) -> set[int]:
    return {x for c in cycles(phi) for x in c}


def stabilized_image(phi: Graph) -> set[int]:
    """The eventual image, the intersection of all phi^k(P^1).

    Independent of the cycle walk: iterate images of the full set as bitsets.
    """
    img = np.asarray(_graph(phi), dtype=np.int64)
    S = np.ones(len(img), dtype=bool)
    size = len(img)
    while True:
        nxt = np.zeros_like(S)
        nxt[img[S]] = True
        new_size = int(nxt.sum())
        if new_size == size:
            return set(np.flatnonzero(nxt).tolist())
        S, size = nxt, new_size


def periodic_points(phi: RatMap) -> set[ProjPoint]:
    return {ProjPoint.from_index(phi.ctx, i) for i in periodic_indices(phi)}


def image_sequence(phi: Graph, n_max: int) -> list[int]:
    """[|S_0|, |S_1|, ...] with S_0 = P^1 and S_{k+1} = phi(S_k).

    Stops after n_max steps or at the first repeated size, whichever is first;
    a repeat means the image has stabilized.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    img = np.asarray(_graph(phi), dtype=np.int64)
    S = np.ones(len(img), dtype=bool)
    sizes = [len(img)]
    for _ in range(n_max):
        nxt = np.zeros_like(S)
        nxt[img[S]] = True
        sizes.append(int(nxt.sum()))
        if sizes[-1] == sizes[-2]:
            break
        S = nxt
    return sizes


def iterated_image_size(phi: Graph, n: int) -> int:
    """|phi^n(P^1)| for any n >= 0, using stabilization for large n."""
    seq = image_sequence(phi, n)
    return seq[n] if n < len(seq) else seq[-1]


def periodic_proportion(phi: Graph) -> Fraction:
    img = _graph(phi)
    return Fraction(len(periodic_indices(img)), len(img))


@dataclass(frozen=True)
class OrbitCensus:
    q_plus_1: int
    periodic_count: int
    image_sizes: tuple[int, ...]
    stabilization_index: int
    cycle_lengths: tuple[int, ...]

    @property
    def periodic_proportion(self) -> Fraction:
        return Fraction(self.periodic_count, self.q_plus_1)


def census(phi: Graph) -> OrbitCensus:
    img = _graph(phi)
    n = len(img)
    cyc = cycles(img)
    sizes = image_sequence(img, n + 1)
    out = OrbitCensus(
        q_plus_1=n,
        periodic_count=sum(len(c) for c in cyc),
        image_sizes=tuple(sizes),
        stabilization_index=len(sizes) - 2,
        cycle_lengths=tuple(sorted(len(c) for c in cyc)),
    )
    assert out.image_sizes[out.stabilization_index] == out.periodic_count
    return out
