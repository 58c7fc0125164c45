"""Seeded Monte Carlo null distributions of the laboratory-effect statistics.

Each replicate draws M independent MN(n; p) count vectors by inverse-CDF
sampling, one uniform per observation in lab-major order, from its own
xoshiro256** stream (see :mod:`ordanova.prng`). Replicates are simulated in
vectorised chunks and every statistic is evaluated from integer count sums,
so the output is bit-identical whatever the chunk size or worker count.

Statistics
----------
``IP``
    ratio statistic, scaled by the configured :class:`DofConvention`;
    replicates with no ordinal variation are recorded as ``+inf``.
``IN``
    weighted-count form of I_N with the squared cumulative term evaluated at
    the null ``p`` (the quantity the normal approximation models).
``IN_TABLE``
    I_N recomputed entirely from each simulated table (bounded by 1).
``S2B``
    between-lab component alone.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ingest import ContingencyTable, ProbabilityVector
from .prng import LaneStreams, Xoshiro256ss
from .statistics import CONSISTENT, DofConvention

STATISTICS = ("IP", "IN", "IN_TABLE", "S2B")
DEFAULT_REPS = 10_000
_CHUNK = 4096


@dataclass(frozen=True)
class SimConfig:
    M: int
    n: int
    p: ProbabilityVector
    reps: int = DEFAULT_REPS
    seed: int = 0
    statistic: str = "IN"
    dof: DofConvention = field(default=CONSISTENT)

    def __post_init__(self):
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if self.M < 2:
            raise ValueError("need at least 2 laboratories")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.statistic not in STATISTICS:
            raise ValueError(f"statistic must be one of {STATISTICS}, got {self.statistic!r}")
        if not 0 <= self.seed <= 0xFFFFFFFFFFFFFFFF:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def as_dict(self) -> dict:
        return {
            "M": self.M,
            "n": self.n,
            "p": [float(v) for v in self.p.p],
            "reps": self.reps,
            "seed": self.seed,
            "statistic": self.statistic,
            "dof": self.dof.kind,
        }


@dataclass(frozen=True)
class McDistribution:
    values: np.ndarray
    config: SimConfig

    def __len__(self):
        return self.values.size

    def mean(self) -> float:
        return float(np.mean(self.values))

    def var(self) -> float:
        return float(np.var(self.values))

    @property
    def n_infinite(self) -> int:
        return int(np.sum(np.isinf(self.values)))


def sample_multinomial(stream: Xoshiro256ss, n: int, p: ProbabilityVector) -> np.ndarray:
    """One MN(n; p) count vector from ``n`` inverse-CDF draws on ``stream``."""
    F = p.F
    counts = np.zeros(p.K, dtype=np.int64)
    for _ in range(n):
        u = stream.uniform()
        counts[int(np.searchsorted(F, u, side="right"))] += 1
    return counts


def simulate_counts(config: SimConfig, rep_start: int, rep_stop: int) -> np.ndarray:
    """Count tables for replicates ``rep_start..rep_stop-1``, shape (R, M, K)."""
    reps = np.arange(rep_start, rep_stop, dtype=np.uint64)
    R = reps.size
    K = config.p.K
    F = config.p.F
    lanes = LaneStreams(config.seed, reps)
    counts = np.zeros((R, config.M, K), dtype=np.int64)
    rows = np.arange(R)
    for m in range(config.M):
        for _ in range(config.n):
            cat = np.searchsorted(F, lanes.uniform(), side="right")
            counts[rows, m, cat] += 1
    return counts


def table_from_counts(counts: np.ndarray) -> ContingencyTable:
    M = counts.shape[0]
    return ContingencyTable(tuple(f"lab{m + 1}" for m in range(M)), counts)


def evaluate_counts(counts: np.ndarray, config: SimConfig) -> np.ndarray:
    """Configured statistic for a stack of count tables (R, M, K)."""
    _, M, K = counts.shape
    n = config.n
    N = n * M
    c = 4.0 / (K - 1)
    cum = np.cumsum(counts, axis=2)[:, :, :-1]
    T = cum.sum(axis=1)
    if config.statistic == "IN":
        w = np.arange(K - 1, 0, -1, dtype=np.int64)
        col = counts.sum(axis=1)[:, :-1]
        lin = (col * w).sum(axis=1)
        const = c * float(np.sum(config.p.F[:-1] ** 2))
        return c * lin / N - const
    total_num = (T * (N - T)).sum(axis=1)
    h2_total = c * total_num / (N * N)
    if config.statistic == "IN_TABLE":
        return h2_total
    dev = M * cum - T[:, None, :]
    between_num = (dev * dev).sum(axis=(1, 2))
    s2_between = c * between_num / (M * N * N)
    if config.statistic == "S2B":
        return s2_between
    df_b = config.dof.df_between(M, n)
    df_t = config.dof.df_total(M, n)
    out = np.full(counts.shape[0], np.inf)
    ok = total_num > 0
    if df_b > 0:
        out[ok] = (s2_between[ok] / df_b) / (h2_total[ok] / df_t)
    return out


def _run_chunk(config: SimConfig, start: int, stop: int) -> np.ndarray:
    return evaluate_counts(simulate_counts(config, start, stop), config)


def simulate_distribution(config: SimConfig, workers: int = 1, chunk: int = _CHUNK) -> McDistribution:
    """Sorted draws of the configured statistic under the multinomial null."""
    bounds = [(s, min(s + chunk, config.reps)) for s in range(0, config.reps, chunk)]
    if workers <= 1 or len(bounds) == 1:
        parts = [_run_chunk(config, a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: _run_chunk(config, *ab), bounds))
    values = np.sort(np.concatenate(parts), kind="stable")
    values.setflags(write=False)
    return McDistribution(values=values, config=config)


def upper_percentile(dist: McDistribution, alpha: float) -> float:
    """The ceil(alpha * reps)-th largest draw."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    size = len(dist.values)
    if size == 0:
        raise ValueError("empty distribution")
    rank = max(1, math.ceil(alpha * size - 1e-9))
    return float(dist.values[size - rank])


def tail_fraction(dist: McDistribution, threshold: float) -> float:
    if len(dist.values) == 0:
        return 0.0
    return float(np.mean(dist.values >= threshold))


def ecdf_rows(dist: McDistribution) -> list[tuple[float, float]]:
    """(value, fraction of draws <= value) at each distinct value."""
    vals, counts = np.unique(dist.values, return_counts=True)
    cum = np.cumsum(counts)
    total = cum[-1] if cum.size else 0
    rows = [(float(v), float(c) / total) for v, c in zip(vals, cum)]
    if rows:
        rows[-1] = (rows[-1][0], 1.0)
    return rows


def ecdf_at(dist: McDistribution, x: float) -> float:
    return float(np.searchsorted(dist.values, x, side="right")) / len(dist.values)


def ks_distance(dist: McDistribution, cdf) -> float:
    """sup |ECDF - cdf| over the draws, checking both sides of every jump."""
    vals, counts = np.unique(dist.values, return_counts=True)
    after = np.cumsum(counts) / counts.sum()
    before = np.concatenate([[0.0], after[:-1]])
    model = np.asarray(cdf(vals), dtype=float)
    return float(max(np.max(np.abs(after - model)), np.max(np.abs(before - model))))


def write_ecdf_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["value", "cumulative_fraction"])
        for value, frac in rows:
            writer.writerow([repr(value), repr(frac)])
