"""Normal approximation to the null distribution of I_N.

Under homogeneity every lab's count vector is MN(n; p). I_N can be written as
a constant plus c/(nM) * sum_m sum_k (K-k) X_km with c = 4/(K-1), so its null
mean and variance follow from the multinomial moments of the weighted counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ingest import ProbabilityVector
from .special import chi2_quantile, norm_cdf, std_normal_quantile

__all__ = [
    "GaussianCountModel",
    "NormalApprox",
    "chi2_quantile",
    "critical_value",
    "gaussian_count_model",
    "normal_params",
    "std_normal_quantile",
]


class DegenerateNullError(ValueError):
    """The null puts all mass in one category, so sigma2 = 0."""


@dataclass(frozen=True)
class GaussianCountModel:
    """Mean and covariance of the first K-1 multinomial counts of one lab."""

    mean: np.ndarray
    cov: np.ndarray

    def weighted_moments(self, weights) -> tuple[float, float]:
        w = np.asarray(weights, dtype=float)
        return float(w @ self.mean), float(w @ self.cov @ w)


@dataclass(frozen=True)
class NormalApprox:
    mu: float
    sigma2: float
    K: int
    M: int
    n: int

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    def cdf(self, x):
        """Approximate null CDF; a step at ``mu`` when sigma2 is 0."""
        x = np.asarray(x, dtype=float)
        if self.sigma2 == 0.0:
            return np.where(x >= self.mu, 1.0, 0.0)
        z = (x - self.mu) / self.sigma
        return np.vectorize(norm_cdf, otypes=[float])(z)


def gaussian_count_model(p: ProbabilityVector, n: int) -> GaussianCountModel:
    if n < 1:
        raise ValueError("n must be at least 1")
    q = np.asarray(p.p[:-1], dtype=float)
    cov = -n * np.outer(q, q)
    np.fill_diagonal(cov, n * q * (1.0 - q))
    return GaussianCountModel(mean=n * q, cov=cov)


def _rank_weights(K: int) -> np.ndarray:
    return np.arange(K - 1, 0, -1, dtype=float)


def normal_params(p: ProbabilityVector, n: int, M: int) -> NormalApprox:
    """Null mean and variance of I_N for M labs with n results each.

    mu     = c [ sum_k (K-k) p_k - sum_k F_k^2 ]
    sigma2 = c^2/(nM) [ sum_k (K-k)^2 p_k (1-p_k) - sum_{k != l} (K-k)(K-l) p_k p_l ]

    with c = 4/(K-1) and all sums over k, l < K.
    """
    if n < 1 or M < 1:
        raise ValueError("n and M must be positive")
    K = p.K
    c = 4.0 / (K - 1)
    w = _rank_weights(K)
    q = np.asarray(p.p[:-1], dtype=float)
    F = np.asarray(p.F[:-1], dtype=float)
    mu = c * (np.dot(w, q) - np.sum(F**2))
    wq = w * q
    diag = np.sum(w**2 * q * (1.0 - q))
    cross = np.sum(np.outer(wq, wq)) - np.sum(wq**2)
    sigma2 = c * c / (n * M) * (diag - cross)
    # cancellation noise around a degenerate null
    if sigma2 < 1e-15 * c * c:
        sigma2 = 0.0
    return NormalApprox(mu=float(mu), sigma2=float(sigma2), K=K, M=M, n=n)


def critical_value(approx: NormalApprox, alpha: float) -> float:
    """Upper-alpha point of the approximating normal."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if approx.sigma2 <= 0.0:
        raise DegenerateNullError("degenerate null: sigma2 = 0")
    return approx.mu + std_normal_quantile(1.0 - alpha) * approx.sigma
