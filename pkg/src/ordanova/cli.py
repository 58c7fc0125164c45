"""Command-line front end.

    ordanova analyze TABLE.csv [--alpha A] [--dof consistent|paper] [--mc-reps R] [--seed S] [--format json|text]
    ordanova simulate --probs 1/3,1/3,1/3 --labs 5 --reps-per-lab 5 [--draws 10000] [--statistic in|ip] ...
    ordanova reproduce table1|table2|table5|table6|chi2|figures [--seed S] [--out DIR]
    ordanova example table3|table4

Exit codes: 0 success, 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__, load_example
from . import reproduce as rp
from .ingest import ProbabilityVector, TableError, read_table
from .montecarlo import (
    SimConfig,
    ecdf_rows,
    simulate_distribution,
    tail_fraction,
    upper_percentile,
    write_ecdf_csv,
)
from .report import IN_DISCREPANCY, build_report, dumps, format_text
from .statistics import DofConvention

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3

PAPER_EXAMPLE_VALUES = {
    "table3": {"I_N": 0.544, "threshold": 0.646, "decision": "no-reject"},
    "table4": {"I_N": 1.88, "threshold": 1.04, "decision": "reject"},
}


class InputError(Exception):
    pass


def _seed(text):
    v = int(text, 0)
    if not 0 <= v <= 0xFFFFFFFFFFFFFFFF:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _alpha(text):
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError("alpha must lie in (0, 1)")
    return v


def _emit(report, fmt, out):
    out.write(dumps(report) + "\n" if fmt == "json" else format_text(report))


def cmd_analyze(args, out) -> int:
    try:
        table = read_table(args.csv)
    except OSError as exc:
        raise InputError(f"cannot read {args.csv}: {exc}") from None
    except TableError as exc:
        raise InputError(f"{args.csv}: {exc}") from None
    if args.mc_reps and args.mc_reps < 100:
        raise InputError("--mc-reps needs at least 100 replicates")
    report = build_report(table, alpha=args.alpha, dof=DofConvention.from_name(args.dof),
                          mc_reps=args.mc_reps, seed=args.seed, workers=args.workers,
                          source=str(args.csv))
    _emit(report, args.format, out)
    return EXIT_OK


def cmd_example(args, out) -> int:
    table = load_example(args.name)
    report = build_report(table, alpha=args.alpha, dof=DofConvention.from_name(args.dof),
                          mc_reps=args.mc_reps, seed=args.seed, workers=args.workers,
                          source=f"embedded:{args.name}")
    report["paper_values"] = dict(PAPER_EXAMPLE_VALUES[args.name])
    report["notes"].append(IN_DISCREPANCY)
    _emit(report, args.format, out)
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    try:
        p = ProbabilityVector.parse(args.probs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    stat = args.statistic.upper()
    try:
        cfg = SimConfig(M=args.labs, n=args.reps_per_lab, p=p, reps=args.draws, seed=args.seed,
                        statistic=stat, dof=DofConvention.from_name(args.dof))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    dist = simulate_distribution(cfg, workers=args.workers)
    finite = dist.values[np.isfinite(dist.values)]
    summary = {
        "config": cfg.as_dict(),
        "mean": float(np.mean(finite)) if finite.size else None,
        "variance": float(np.var(finite)) if finite.size else None,
        "upper5": upper_percentile(dist, 0.05),
        "n_infinite": dist.n_infinite,
    }
    if stat == "IP":
        summary["tail_ge3"] = tail_fraction(dist, 3.0)
    if args.ecdf_out:
        write_ecdf_csv(args.ecdf_out, ecdf_rows(dist))
        summary["ecdf_out"] = str(args.ecdf_out)
    if summary["upper5"] == float("inf"):
        summary["upper5"] = None
    out.write(json.dumps(summary, indent=2, allow_nan=False) + "\n")
    return EXIT_OK


def cmd_reproduce(args, out) -> int:
    if args.target == "figures":
        paths = rp.figures(args.out, seed=args.seed, reps=args.draws, workers=args.workers)
        for path in paths:
            out.write(f"{path}\n")
        return EXIT_OK
    rows = rp.run(args.target, seed=args.seed, reps=args.draws, workers=args.workers)
    out.write(rp.to_csv(rows) if args.format == "csv" else rp.to_markdown(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordanova", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mc=True):
        p.add_argument("--alpha", type=_alpha, default=0.05)
        p.add_argument("--dof", choices=["consistent", "paper"], default="consistent")
        if mc:
            p.add_argument("--mc-reps", type=int, default=0,
                           help="bootstrap replicates for Monte Carlo p-values (0 = skip)")
        p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", choices=["json", "text"], default="json")

    a = sub.add_parser("analyze", help="analyze a lab x category count table")
    a.add_argument("csv")
    common(a)
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("example", help="analyze an embedded AIST table")
    e.add_argument("name", choices=["table3", "table4"])
    common(e)
    e.set_defaults(func=cmd_example)

    s = sub.add_parser("simulate", help="simulate a statistic's null distribution")
    s.add_argument("--probs", required=True, help="null probabilities, e.g. 1/3,1/3,1/3")
    s.add_argument("--labs", type=int, required=True)
    s.add_argument("--reps-per-lab", type=int, required=True)
    s.add_argument("--draws", type=int, default=10_000)
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--statistic", choices=["ip", "in", "in_table", "s2b"], default="in")
    s.add_argument("--dof", choices=["consistent", "paper"], default="consistent")
    s.add_argument("--ecdf-out")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("reproduce", help="regenerate published tables or figure data")
    r.add_argument("target", choices=list(rp.TARGETS))
    r.add_argument("--seed", type=_seed, default=0)
    r.add_argument("--draws", type=int, default=10_000)
    r.add_argument("--workers", type=int, default=1)
    r.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    r.add_argument("--out", default="figures", help="output directory for `figures`")
    r.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"ordanova: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"ordanova: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
