"""Mean periodic proportion against j for fixed (q, d), both ensembles.

Exact where the ensemble fits the budget, sampled beyond it.  Prints a table
and optionally writes CSV.

    python scripts/trend.py --q 3 5 --j-max 4 --samples 10000
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from ffdyn.ensemble import DEFAULT_BUDGET, EnsembleSpec, average_periodic, count_maps


@dataclass(frozen=True)
class TrendConfig:
    primes: tuple[int, ...] = (3, 5)
    d: int = 2
    j_max: int = 4
    samples: int = 10_000
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    workers: int = 1


def run(cfg: TrendConfig):
    for p in cfg.primes:
        for kind in ("polynomial", "rational"):
            for j in range(1, cfg.j_max + 1):
                exact = count_maps(p**j, cfg.d, kind) <= cfg.budget
                spec = EnsembleSpec(p, j, cfg.d, kind, "exhaustive" if exact else "sampled",
                                    cfg.samples, cfg.seed)
                r = average_periodic(spec, cfg.budget, cfg.workers)
                yield p, j, kind, spec.mode, r.mean, r.stderr


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--j-max", type=int, default=4)
    ap.add_argument("--samples", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=lambda s: int(float(s)), default=DEFAULT_BUDGET)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv")
    a = ap.parse_args(argv)
    cfg = TrendConfig(tuple(a.q), a.d, a.j_max, a.samples, a.seed, a.budget, a.workers)

    rows = []
    print(f"{'p':>3} {'j':>2} {'kind':>10} {'mode':>10} {'mean':>10} {'stderr':>9}")
    for row in run(cfg):
        rows.append(row)
        p, j, kind, mode, mean, se = row
        print(f"{p:>3} {j:>2} {kind:>10} {mode:>10} {mean:>10.6f} {se:>9.2g}", flush=True)
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["p", "j", "kind", "mode", "mean", "stderr"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
