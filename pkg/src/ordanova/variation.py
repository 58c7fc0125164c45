"""Ordinal variation measures and the total = within + between decomposition.

All dispersion measures are normalised by (K-1)/4 so that the largest
attainable value is 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import ContingencyTable, lab_cumulative


@dataclass(frozen=True)
class VariationDecomposition:
    h2_total: float
    h2_within_by_lab: np.ndarray
    h2_within: float
    s2_between_by_k: np.ndarray
    s2_between: float

    def as_dict(self) -> dict:
        return {
            "h2_total": self.h2_total,
            "h2_within": self.h2_within,
            "s2_between": self.s2_between,
            "h2_within_by_lab": [float(v) for v in self.h2_within_by_lab],
            "s2_between_by_k": [float(v) for v in self.s2_between_by_k],
        }


def _scale(K: int) -> float:
    return 4.0 / (K - 1)


def _pooled_F(table: ContingencyTable) -> np.ndarray:
    # first K-1 cumulative levels; F_K = 1 carries no dispersion
    return np.cumsum(table.counts.sum(axis=0))[:-1] / (table.n * table.M)


def total_variation(table: ContingencyTable) -> float:
    Fbar = _pooled_F(table)
    return float(_scale(table.K) * np.sum(Fbar * (1.0 - Fbar)))


def within_lab_variation(table: ContingencyTable, m: int) -> float:
    """Ordinal dispersion of laboratory ``m`` (1-based index)."""
    if not 1 <= m <= table.M:
        raise IndexError(f"lab index {m} out of range 1..{table.M}")
    F = lab_cumulative(table)[m - 1, :-1]
    return float(_scale(table.K) * np.sum(F * (1.0 - F)))


def between_variation_at(table: ContingencyTable, k: int) -> float:
    """Population variance over labs of the cumulative frequency at level k (1-based, k < K)."""
    if not 1 <= k <= table.K - 1:
        raise IndexError(f"category index {k} out of range 1..{table.K - 1}")
    F = lab_cumulative(table)[:, k - 1]
    return float(np.mean((F - F.mean()) ** 2))


def _expanded_routes(table: ContingencyTable) -> tuple[float, float]:
    """Between and within components through the squared-sum expansion.

    between = c/M sum_m sum_k F_km^2 - c sum_k Fbar_k^2
    within  = c/M sum_m sum_k F_km - c/M sum_m sum_k F_km^2

    The within form is what the mean-of-lab-dispersions reduces to after
    expanding F(1-F); together they give an independent path to the
    decomposition that never forms deviations from the mean.
    """
    c = _scale(table.K)
    F = lab_cumulative(table)[:, :-1]
    Fbar = _pooled_F(table)
    sq = np.sum(F**2) / table.M
    between = c * sq - c * np.sum(Fbar**2)
    within = c * np.sum(F) / table.M - c * sq
    return float(between), float(within)


def decompose(table: ContingencyTable, check: bool = True) -> VariationDecomposition:
    """Total, within-lab and between-lab ordinal variation.

    With ``check=True`` (the default) the result is cross-checked against the
    expanded evaluation in :func:`_expanded_routes` and against the identity
    total = within + between; an ``ArithmeticError`` signals a mismatch.
    """
    c = _scale(table.K)
    F = lab_cumulative(table)[:, :-1]
    Fbar = F.mean(axis=0)
    within_by_lab = c * np.sum(F * (1.0 - F), axis=1)
    between_by_k = np.mean((F - Fbar) ** 2, axis=0)
    h2_within = float(within_by_lab.mean())
    s2_between = float(c * between_by_k.sum())
    h2_total = total_variation(table)
    if check:
        tol = 1e-12 * max(1.0, h2_total)
        b2, w2 = _expanded_routes(table)
        if abs(b2 - s2_between) > tol or abs(w2 - h2_within) > tol:
            raise ArithmeticError("expanded and direct decompositions disagree")
        if abs(h2_total - h2_within - s2_between) > tol:
            raise ArithmeticError("total != within + between")
    within_by_lab.setflags(write=False)
    between_by_k.setflags(write=False)
    return VariationDecomposition(
        h2_total=h2_total,
        h2_within_by_lab=within_by_lab,
        h2_within=h2_within,
        s2_between_by_k=between_by_k,
        s2_between=s2_between,
    )
