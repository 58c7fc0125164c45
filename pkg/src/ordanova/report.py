"""Analysis reports: one JSON-serialisable dict per analysed table."""

from __future__ import annotations

import json
import math
from importlib import resources

from . import __version__
from .approx import normal_params
from .decide import mc_pvalue, test_in, test_ip_chi2, test_ip_constant3
from .ingest import ContingencyTable, pooled_probabilities
from .statistics import CONSISTENT, PAPER_LITERAL, DegenerateTableError, DofConvention, statistic_in, statistic_ip
from .variation import decompose

IN_DISCREPANCY = (
    "published I_N values for the two embedded AIST examples (0.544 and 1.88) "
    "cannot be reproduced from the within + between definition; 1.88 exceeds "
    "the maximum attainable normalised variation of 1. Computed values satisfy "
    "total = within + between exactly and match the plug-in null mean."
)


def _finite(x):
    if x is None:
        return None
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _ip_or_none(table, dof):
    try:
        return statistic_ip(table, dof)
    except DegenerateTableError:
        return None


def build_report(
    table: ContingencyTable,
    alpha: float = 0.05,
    dof: DofConvention = CONSISTENT,
    mc_reps: int = 0,
    seed: int = 0,
    workers: int = 1,
    source: str | None = None,
) -> dict:
    d = decompose(table)
    pooled = pooled_probabilities(table)
    approx = normal_params(pooled, table.n, table.M)
    stat_in = statistic_in(table)
    tests = [test_in(table, alpha).as_dict()]
    notes = []
    try:
        tests.append(test_ip_constant3(table, dof).as_dict())
    except DegenerateTableError as exc:
        tests.append({"method": f"I_P constant-3 rule ({dof.kind} dof)", "statistic": None,
                      "threshold": [1.0, 3.0], "alpha": None, "decision": "degenerate",
                      "notes": [str(exc)]})
    if table.K == 2:
        try:
            tests.append(test_ip_chi2(table, alpha).as_dict())
        except DegenerateTableError as exc:
            notes.append(str(exc))
    for t in tests:
        t["statistic"] = _finite(t["statistic"])
    report = {
        "tool": "ordanova",
        "version": __version__,
        "source": source,
        "input": {
            "M": table.M,
            "K": table.K,
            "n": table.n,
            "labels": list(table.labels),
            "categories": list(table.categories),
            "counts": table.counts.tolist(),
        },
        "pooled_p": [float(v) for v in pooled.p],
        "decomposition": d.as_dict(),
        "statistics": {
            "I_N": stat_in,
            "I_P_consistent": _ip_or_none(table, CONSISTENT),
            "I_P_paper_literal": _ip_or_none(table, PAPER_LITERAL),
        },
        "approx": {"mu": approx.mu, "sigma2": approx.sigma2},
        "tests": tests,
        "config": {"alpha": alpha, "dof": dof.kind, "mc_reps": mc_reps, "seed": seed},
        "notes": notes,
    }
    if mc_reps:
        report["mc_pvalues"] = {
            s: mc_pvalue(table, s, reps=mc_reps, seed=seed, workers=workers)
            for s in ("S2B", "IN", "IP")
        }
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False)


def schema() -> dict:
    text = resources.files("ordanova").joinpath("data/report.schema.json").read_text("utf-8")
    return json.loads(text)


def _fmt(x, digits=6):
    return "n/a" if x is None else f"{x:.{digits}g}"


def format_text(report: dict) -> str:
    inp = report["input"]
    d = report["decomposition"]
    s = report["statistics"]
    lines = [
        f"ordanova {report['version']}" + (f"  [{report['source']}]" if report.get("source") else ""),
        f"labs M={inp['M']}  categories K={inp['K']}  results per lab n={inp['n']}",
        "",
        "variation",
        f"  total    h2_T = {_fmt(d['h2_total'])}",
        f"  within   h2_W = {_fmt(d['h2_within'])}",
        f"  between  S2_B = {_fmt(d['s2_between'])}",
        "",
        "statistics",
        f"  I_N                      = {_fmt(s['I_N'])}",
        f"  I_P (df_B = M-1)         = {_fmt(s['I_P_consistent'])}",
        f"  I_P (df_B = M(n-1))      = {_fmt(s['I_P_paper_literal'])}",
        f"  null approx  mu = {_fmt(report['approx']['mu'])}  sigma2 = {_fmt(report['approx']['sigma2'])}",
        "",
        "tests",
    ]
    for t in report["tests"]:
        thr = t["threshold"]
        thr = "[" + ", ".join(_fmt(v, 4) for v in thr) + "]" if isinstance(thr, list) else _fmt(thr, 4)
        lines.append(f"  {t['method']}: statistic {_fmt(t['statistic'])} vs {thr} -> {t['decision']}")
        for note in t["notes"]:
            lines.append(f"      note: {note}")
    if "mc_pvalues" in report:
        cfg = report["config"]
        lines += ["", f"Monte Carlo p-values ({cfg['mc_reps']} reps, seed {cfg['seed']})"]
        for k, v in report["mc_pvalues"].items():
            lines.append(f"  {k:4s} p = {v:.6g}")
    if "paper_values" in report:
        lines += ["", "published values"]
        for k, v in report["paper_values"].items():
            lines.append(f"  {k}: {v}")
    for note in report["notes"]:
        lines += ["", f"note: {note}"]
    return "\n".join(lines) + "\n"
