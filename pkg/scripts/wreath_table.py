"""Table of f_n(d) against the 2/(n+2) bound.

Values are exact while denominators stay small, then rigorous upper ends of
the enclosure.  The margin column is 2/(n+2) - f_n (or a lower bound on it).
"""

import argparse
from dataclasses import dataclass

from ffdyn.wreath import check_fix_bound, fix_enclosure


@dataclass(frozen=True)
class TableConfig:
    d_max: int = 7
    n_max: int = 20
    bits: int = 256


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=7)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--bits", type=int, default=256)
    a = ap.parse_args(argv)
    cfg = TableConfig(a.d_max, a.n_max, a.bits)

    print(f"{'d':>2} {'n':>3} {'f_n':>12} {'2/(n+2)':>10} {'margin':>12}  holds")
    for d in range(2, cfg.d_max + 1):
        enc = fix_enclosure(d, cfg.n_max, cfg.bits)
        for n, (_, hi) in enumerate(enc, start=1):
            b = check_fix_bound(d, n, cfg.bits)
            print(f"{d:>2} {n:>3} {float(hi):>12.8f} {2 / (n + 2):>10.6f} {float(b.gap):>12.3e}  {b.holds}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
