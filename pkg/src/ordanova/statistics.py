"""Test statistics for laboratory effects: the ratio I_P and the sum I_N."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import ContingencyTable, ProbabilityVector
from .variation import decompose, total_variation


class DegenerateTableError(ValueError):
    """All results fall in a single category, so a ratio statistic is 0/0."""


@dataclass(frozen=True)
class DofConvention:
    """Degrees of freedom used to scale I_P.

    ``consistent`` uses M-1 between-lab degrees of freedom, which is what the
    chi2/(M-1) reference for K=2 requires. ``paper-literal`` uses M(n-1) as
    printed alongside the original ratio definition. Both use nM-1 in total.
    """

    kind: str = "consistent"

    def __post_init__(self):
        if self.kind not in ("consistent", "paper-literal"):
            raise ValueError(f"unknown dof convention {self.kind!r}")

    @classmethod
    def from_name(cls, name: str) -> "DofConvention":
        return cls("paper-literal" if name in ("paper", "paper-literal") else name)

    def df_between(self, M: int, n: int) -> int:
        return M - 1 if self.kind == "consistent" else M * (n - 1)

    def df_total(self, M: int, n: int) -> int:
        return n * M - 1


CONSISTENT = DofConvention("consistent")
PAPER_LITERAL = DofConvention("paper-literal")


def statistic_ip(table: ContingencyTable, dof: DofConvention = CONSISTENT) -> float:
    """Between-lab variation over total variation, each per degree of freedom."""
    d = decompose(table)
    if d.h2_total == 0.0:
        raise DegenerateTableError("no ordinal variation; I_(P) undefined")
    df_b = dof.df_between(table.M, table.n)
    if df_b == 0:
        raise DegenerateTableError("zero between-lab degrees of freedom (n = 1)")
    return (d.s2_between / df_b) / (d.h2_total / dof.df_total(table.M, table.n))


def weighted_count_form(table: ContingencyTable) -> float:
    """I_N via the reverse-rank weighted column totals.

    c/(nM) * sum_k (K-k) N_k  -  c * sum_k Fbar_k^2,   c = 4/(K-1)

    where N_k is the pooled count of category k and Fbar the pooled
    cumulative frequencies.
    """
    K, M, n = table.K, table.M, table.n
    c = 4.0 / (K - 1)
    weights = np.arange(K - 1, 0, -1)
    totals = table.counts.sum(axis=0)[:-1]
    Fbar = np.cumsum(totals) / (n * M)
    return float(c * np.dot(weights, totals) / (n * M) - c * np.sum(Fbar**2))


def statistic_in(table: ContingencyTable, check: bool = True) -> float:
    """Within-lab plus between-lab ordinal variation.

    Because the decomposition is exact this equals the total variation of the
    pooled table; ``check`` asserts that and the weighted-count form.
    """
    d = decompose(table, check=check)
    value = d.h2_within + d.s2_between
    if check:
        tol = 1e-12 * max(1.0, value)
        if abs(value - total_variation(table)) > tol:
            raise ArithmeticError("I_N differs from pooled total variation")
        if abs(value - weighted_count_form(table)) > tol:
            raise ArithmeticError("I_N differs from weighted-count form")
    return value


def statistic_in_null(table: ContingencyTable, null: ProbabilityVector) -> float:
    """I_N in weighted-count form with the squared cumulative term held at ``null``.

    This is the linear-in-counts quantity whose null mean and variance the
    normal approximation describes exactly. It coincides with
    :func:`statistic_in` when ``null`` is the pooled estimate of the table.
    """
    if null.K != table.K:
        raise ValueError(f"null has {null.K} categories, table has {table.K}")
    K, M, n = table.K, table.M, table.n
    c = 4.0 / (K - 1)
    weights = np.arange(K - 1, 0, -1)
    totals = table.counts.sum(axis=0)[:-1]
    return float(c * np.dot(weights, totals) / (n * M) - c * np.sum(null.F[:-1] ** 2))
