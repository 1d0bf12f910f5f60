"""Command-line entry point: ``ffdyn <subcommand> [flags]``.

Every subcommand writes CSV: a ``#`` comment line with the version and the
run configuration, a header row, then data.  Exact rationals are written as
integer (num, den) column pairs; a trailing ``*_approx`` float column is a
convenience only.  Output depends only on the configuration (never on
``--workers`` or ``--out``), so reruns are byte-identical.

Exit codes: 0 success, 1 a verification reported FAIL, 2 invalid input,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import BoundRefused, bound_survey
from .dynamics import image_sequence
from .ensemble import (
    DEFAULT_BUDGET,
    KINDS,
    EnsembleSpec,
    HypothesisWarning,
    average_periodic,
    bad_locus_report,
    count_enumerated,
    count_maps,
    enumerate_maps,
    sample_map,
    slot_count,
)
from .errors import BudgetExceeded
from .ffield import FieldError, make_field
from .projmap import map_from_text, map_to_text
from .wreath import (
    EXACT_BITS_BUDGET,
    check_fix_bound,
    fix_bruteforce,
    fix_enclosure,
    fix_recursive,
    group_order,
)

EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET = 1, 2, 3

# Recorded in the CSV comment line; excludes flags that cannot change results.
_UNRECORDED = {"out", "workers", "config", "func", "command"}


def parse_int_list(text: str) -> list[int]:
    """'3', '1-4', '1..4' or '2,3,5' (items may themselves be ranges)."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        sep = ".." if ".." in part else "-" if "-" in part[1:] else None
        if sep:
            a, b = part.split(sep)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    return out


def read_config(path: str) -> dict[str, str]:
    cfg = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {raw!r} is not key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        cfg[k.replace("-", "_")] = v
    return cfg


class _Out:
    def __init__(self, args):
        self.args = args
        self.buf = io.StringIO()
        self.writer = csv.writer(self.buf, lineterminator="\n")
        items = sorted((k, v) for k, v in vars(args).items() if k not in _UNRECORDED)
        conf = " ".join(f"{k}={v}" for k, v in items if v is not None)
        self.buf.write(f"# ffdyn {__version__} {args.command} {conf}\n")

    def row(self, *cells):
        self.writer.writerow(["" if c is None else c for c in cells])

    def comment(self, text: str):
        self.buf.write(f"# {text}\n")

    def flush(self):
        if self.args.out:
            Path(self.args.out).write_text(self.buf.getvalue())
        else:
            sys.stdout.write(self.buf.getvalue())


def _approx(x: Fraction) -> str:
    return f"{float(x):.12g}"


def _spec(args, j: int, p: int | None = None, mode: str | None = None) -> EnsembleSpec:
    return EnsembleSpec(
        p=args.p if p is None else p,
        j=j,
        d=args.d,
        kind=args.kind,
        mode=mode or ("sampled" if args.mode == "sampled" else "exhaustive"),
        n_samples=args.samples,
        seed=args.seed,
    )


def _resolve_mode(args, spec: EnsembleSpec) -> EnsembleSpec:
    if args.mode != "auto":
        return spec
    if count_maps(spec.q, spec.d, spec.kind) <= args.budget:
        return spec
    return _spec(args, spec.j, mode="sampled")


def _j_values(args) -> list[int]:
    return parse_int_list(args.j_range) if args.j_range else [args.j]


def _warn_hypothesis(q: int, d: int) -> None:
    if math.gcd(q, math.factorial(d)) != 1:
        print(
            f"warning: gcd({q}, {d}!) != 1, so the means need not tend to 0 as j grows; "
            "the average is still well defined",
            file=sys.stderr,
        )


# --- subcommands ---------------------------------------------------------------


def cmd_avg_periodic(args, out: _Out) -> int:
    out.row("p", "j", "d", "kind", "mode", "map_count", "mean_num", "mean_den",
            "stderr", "n_samples", "seed", "mean_approx")
    for j in _j_values(args):
        spec = _resolve_mode(args, _spec(args, j))
        _warn_hypothesis(spec.q, spec.d)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HypothesisWarning)
            r = average_periodic(spec, budget=args.budget, workers=args.workers)
        m = r.mean_periodic_proportion
        sampled = spec.mode == "sampled"
        out.row(spec.p, j, spec.d, spec.kind, spec.mode,
                count_maps(spec.q, spec.d, spec.kind), m.numerator, m.denominator,
                f"{r.stderr:.12g}", spec.n_samples if sampled else None,
                spec.seed if sampled else None, _approx(m))
    return 0


def cmd_verify_counts(args, out: _Out) -> int:
    out.row("q", "d", "kind", "enumerated", "formula", "status")
    kinds = KINDS if args.kind == "both" else (args.kind,)
    failed = False
    for p in parse_int_list(args.p):
        for j in _j_values(args):
            for d in parse_int_list(args.d):
                for kind in kinds:
                    q = p**j
                    formula = count_maps(q, d, kind)
                    if slot_count(q, d, kind) > args.budget:
                        out.row(q, d, kind, None, formula, "SKIPPED")
                        continue
                    n = count_enumerated(p, j, d, kind)
                    failed |= n != formula
                    out.row(q, d, kind, n, formula, "PASS" if n == formula else "FAIL")
    return EXIT_FAIL if failed else 0


def cmd_fix_wreath(args, out: _Out) -> int:
    out.row("d", "n", "fix_num", "fix_den", "bound_num", "bound_den", "method",
            "below_bound", "fix_approx")
    for d in parse_int_list(args.d):
        for n in parse_int_list(args.n):
            bound = Fraction(2, n + 2)
            methods = ["bruteforce", "recursion"] if args.method == "both" else [args.method]
            for method in methods:
                if method == "bruteforce" and args.method == "both" and group_order(d, n) > args.budget:
                    continue
                if method == "bruteforce":
                    f, label = fix_bruteforce(d, n, budget=args.budget).fix_value, "bruteforce"
                else:
                    try:
                        f, label = fix_recursive(d, n, EXACT_BITS_BUDGET).fix_value, "recursion"
                    except BudgetExceeded:
                        f, label = fix_enclosure(d, n)[-1][1], "recursion-upper"
                holds = check_fix_bound(d, n).holds if label == "recursion-upper" else f < bound
                out.row(d, n, f.numerator, f.denominator, bound.numerator,
                        bound.denominator, label, str(holds).lower(), _approx(f))
    return 0


def _ensemble_maps(args):
    spec = _resolve_mode(args, _spec(args, args.j))
    if spec.mode == "exhaustive":
        return enumerate_maps(spec, args.budget)
    return (sample_map(spec, i) for i in range(spec.n_samples))


def cmd_image_decay(args, out: _Out) -> int:
    out.row("map_id", "k", "image_size")
    if args.map:
        maps = [map_from_text(make_field(args.p, args.j), args.map)]
    else:
        maps = _ensemble_maps(args)
    for phi in maps:
        tag = map_to_text(phi)
        for k, s in enumerate(image_sequence(phi, args.n)):
            out.row(tag, k, s)
    return 0


def cmd_bound_check(args, out: _Out) -> int:
    spec = _resolve_mode(args, _spec(args, args.j))
    survey = bound_survey(spec, args.n, args.budget)
    out.row("q", "d", "n", "map_id", "image_size", "fix_num", "fix_den",
            "lhs_rel_num", "lhs_rel_den", "satisfied_abs", "satisfied_rel",
            "lhs_rel_approx")
    for tag, c in survey.rows:
        out.row(c.q, c.d, c.n, tag, c.image_size, c.assumed_fix.numerator,
                c.assumed_fix.denominator, c.lhs_relative.numerator,
                c.lhs_relative.denominator, str(c.satisfied_abs).lower(),
                str(c.satisfied_rel).lower(), _approx(c.lhs_relative))
    fa, fr = survey.fraction_abs, survey.fraction_rel
    out.comment(
        f"DIAGNOSTIC (generic group assumed) maps={len(survey.rows)} "
        f"skipped_inseparable={survey.skipped_inseparable} "
        f"satisfied_abs_fraction={fa.numerator}/{fa.denominator} "
        f"satisfied_rel_fraction={fr.numerator}/{fr.denominator}"
    )
    return 0


def cmd_bad_locus(args, out: _Out) -> int:
    out.row("p", "j", "d", "kind", "tuple_count", "non_generating_count",
            "bad_reduction_count", "bound", "bound_holds")
    for j in _j_values(args):
        r = bad_locus_report(args.p, j, args.d, args.kind, args.budget)
        bound = r.bound if r.kind == "rational" else f"sqrt({r.bound})"
        out.row(r.p, r.j, r.d, r.kind, r.tuple_count, r.non_generating_count,
                r.bad_reduction_count, bound, str(r.bound_holds).lower())
    return 0


# --- parser --------------------------------------------------------------------


def _add_common(sp, *, multi_p=False, multi_d=False, multi_n=False, kinds=KINDS,
                kind_default="rational"):
    sp.add_argument("--config", help="key=value file; flags override it")
    sp.add_argument("--p", type=str if multi_p else int, default="2,3" if multi_p else 3)
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--j-range", dest="j_range", help="e.g. 1-4; overrides --j")
    sp.add_argument("--d", type=str if multi_d else int, default="2" if multi_d else 2)
    sp.add_argument("--kind", choices=kinds, default=kind_default)
    sp.add_argument("--n", type=str if multi_n else int, default="1-3" if multi_n else 1,
                    help="iterate depth")
    sp.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--budget", type=lambda s: int(float(s)), default=DEFAULT_BUDGET)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ffdyn", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"ffdyn {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("avg-periodic", help="mean periodic proportion per j")
    _add_common(sp)
    sp.set_defaults(func=cmd_avg_periodic)

    sp = sub.add_parser("verify-counts", help="enumerated map counts vs closed forms")
    _add_common(sp, multi_p=True, multi_d=True, kinds=KINDS + ("both",), kind_default="both")
    sp.set_defaults(func=cmd_verify_counts)

    sp = sub.add_parser("fix-wreath", help="fixed-point proportions of [S_d]^n")
    _add_common(sp, multi_d=True, multi_n=True)
    sp.add_argument("--method", choices=("recursion", "bruteforce", "both"), default="recursion")
    sp.set_defaults(func=cmd_fix_wreath)

    sp = sub.add_parser("image-decay", help="iterated image sizes |phi^k(P^1)|")
    _add_common(sp)
    sp.add_argument("--map", help="map text 'd; f low-to-high; g low-to-high'")
    sp.set_defaults(func=cmd_image_decay, n=20)

    sp = sub.add_parser("bound-check", help="image-size inequality diagnostic")
    _add_common(sp, kind_default="polynomial")
    sp.set_defaults(func=cmd_bound_check)

    sp = sub.add_parser("bad-locus", help="non-generating and bad-reduction tuple counts")
    _add_common(sp)
    sp.set_defaults(func=cmd_bad_locus)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if args.config:
            sp = ap._subparsers._group_actions[0].choices[args.command]
            known = {a.dest for a in sp._actions}
            cfg = read_config(args.config)
            unknown = set(cfg) - known
            if unknown:
                raise ValueError(f"unknown config keys: {sorted(unknown)}")
            sp.set_defaults(**cfg)  # string defaults still go through type=
            args = ap.parse_args(argv)
        out = _Out(args)
        code = args.func(args, out)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, FieldError, BoundRefused) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
