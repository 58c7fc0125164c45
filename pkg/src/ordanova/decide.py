"""Decision procedures for laboratory effects."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .approx import DegenerateNullError, critical_value, normal_params
from .ingest import ContingencyTable, ProbabilityVector, pooled_probabilities
from .montecarlo import SimConfig, simulate_distribution
from .special import chi2_quantile
from .statistics import (
    CONSISTENT,
    DegenerateTableError,
    DofConvention,
    statistic_in,
    statistic_ip,
)
from .variation import decompose

REJECT = "reject"
NO_REJECT = "no-reject"
DOUBT = "doubt"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class TestOutcome:
    statistic: float
    method: str
    threshold: float | tuple | None
    decision: str
    alpha: float | None = None
    notes: list = field(default_factory=list)

    __test__ = False  # keep pytest from collecting this class

    def as_dict(self) -> dict:
        thr = self.threshold
        if isinstance(thr, tuple):
            thr = list(thr)
        return {
            "method": self.method,
            "statistic": self.statistic,
            "threshold": thr,
            "alpha": self.alpha,
            "decision": self.decision,
            "notes": list(self.notes),
        }


def test_in(
    table: ContingencyTable, alpha: float = 0.05, null_p: ProbabilityVector | None = None
) -> TestOutcome:
    """Normal-approximation test on I_N.

    Without ``null_p`` the pooled category frequencies stand in for the null.
    I_N then equals the approximate null mean exactly, so the test cannot
    reject; the outcome says so in ``notes``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    stat = statistic_in(table)
    plug_in = null_p is None
    null = pooled_probabilities(table) if plug_in else null_p
    approx = normal_params(null, table.n, table.M)
    method = "normal-approx I_N (" + ("pooled plug-in null" if plug_in else "external null") + ")"
    notes = []
    try:
        threshold = critical_value(approx, alpha)
    except DegenerateNullError:
        return TestOutcome(stat, method, None, DEGENERATE, alpha,
                           ["null puts all mass in one category; sigma2 = 0"])
    if plug_in:
        notes.append(
            "with the pooled plug-in null I_N equals the approximate null mean, "
            "so this test never rejects; use a Monte Carlo p-value on S2B to "
            "probe laboratory effects"
        )
    # a tie at alpha = 0.5 must not flip on rounding noise
    tol = 1e-12 * max(1.0, abs(threshold))
    decision = REJECT if stat > threshold + tol else NO_REJECT
    return TestOutcome(stat, method, threshold, decision, alpha, notes)


def ip_region(value: float) -> str:
    if value > 3.0:
        return REJECT
    if value <= 1.0:
        return NO_REJECT
    return DOUBT


def test_ip_constant3(table: ContingencyTable, dof: DofConvention = CONSISTENT) -> TestOutcome:
    """Heuristic rule: reject above 3, accept at or below 1, doubt in between."""
    stat = statistic_ip(table, dof)
    return TestOutcome(stat, f"I_P constant-3 rule ({dof.kind} dof)", (1.0, 3.0), ip_region(stat))


def test_ip_chi2(table: ContingencyTable, alpha: float = 0.05) -> TestOutcome:
    """chi2_{M-1}/(M-1) reference for I_P, valid for two categories only."""
    if table.K != 2:
        raise ValueError("χ² approximation defined only for K=2")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    df = table.M - 1
    threshold = chi2_quantile(df, 1.0 - alpha) / df
    stat = statistic_ip(table, CONSISTENT)
    return TestOutcome(stat, "I_P chi2/(M-1) reference (K=2)", threshold,
                       REJECT if stat > threshold else NO_REJECT, alpha)


_OBSERVED = {
    "IP": lambda t: statistic_ip(t, CONSISTENT),
    "IN": statistic_in,
    "S2B": lambda t: decompose(t).s2_between,
}


def mc_pvalue(
    table: ContingencyTable,
    statistic: str = "S2B",
    reps: int = 10_000,
    seed: int = 0,
    workers: int = 1,
) -> float:
    """Parametric-bootstrap p-value under MN(n; pooled p) in every lab.

    p = (1 + #{draws >= observed}) / (reps + 1)
    """
    if statistic not in _OBSERVED:
        raise ValueError(f"statistic must be one of {sorted(_OBSERVED)}, got {statistic!r}")
    if reps < 100:
        raise ValueError("need at least 100 replicates")
    null = pooled_probabilities(table)
    try:
        observed = _OBSERVED[statistic](table)
    except DegenerateTableError:
        # 0/0 observed against 0/0 draws: nothing is more extreme than nothing
        if np.count_nonzero(null.p) == 1:
            return 1.0
        raise
    config = SimConfig(table.M, table.n, null, reps=reps, seed=seed,
                       statistic=statistic, dof=CONSISTENT)
    draws = simulate_distribution(config, workers=workers).values
    return pvalue_from_draws(observed, draws)


def pvalue_from_draws(observed: float, draws) -> float:
    """Add-one upper-tail p-value of ``observed`` among simulated ``draws``."""
    draws = np.asarray(draws)
    # draws come from integer sums, the observed value from the float
    # decomposition; ties must survive last-ulp differences
    tol = 1e-12 * max(1.0, abs(observed))
    exceed = int(np.sum(draws >= observed - tol))
    return (1 + exceed) / (draws.size + 1)
