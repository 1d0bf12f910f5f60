"""How fast |phi^k(P^1)| shrinks, averaged over an ensemble.

For each k, prints the mean image ratio |phi^k(P^1)| / (q+1) and the mean
number of steps until the image stabilizes.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from ffdyn.dynamics import image_sequence
from ffdyn.ensemble import EnsembleSpec, enumerate_maps, sample_map


@dataclass(frozen=True)
class DecayConfig:
    p: int = 3
    j: int = 2
    d: int = 2
    kind: str = "rational"
    k_max: int = 12
    samples: int = 0  # 0 means exhaustive


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--j", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--kind", choices=("polynomial", "rational"), default="rational")
    ap.add_argument("--k-max", type=int, default=12)
    ap.add_argument("--samples", type=int, default=0)
    a = ap.parse_args(argv)
    cfg = DecayConfig(a.p, a.j, a.d, a.kind, a.k_max, a.samples)

    if cfg.samples:
        spec = EnsembleSpec(cfg.p, cfg.j, cfg.d, cfg.kind, "sampled", cfg.samples)
        maps = (sample_map(spec, i) for i in range(cfg.samples))
    else:
        maps = enumerate_maps(EnsembleSpec(cfg.p, cfg.j, cfg.d, cfg.kind))
    N = cfg.p**cfg.j + 1
    sums = [0] * (cfg.k_max + 1)
    steps = count = 0
    for phi in maps:
        seq = image_sequence(phi, cfg.k_max)
        steps += len(seq) - 2
        seq += [seq[-1]] * (cfg.k_max + 1 - len(seq))
        for k, s in enumerate(seq):
            sums[k] += s
        count += 1
    for k, s in enumerate(sums):
        print(f"k={k:>2}  mean ratio {float(Fraction(s, count * N)):.6f}")
    print(f"maps={count}  mean stabilization index {steps / count:.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
