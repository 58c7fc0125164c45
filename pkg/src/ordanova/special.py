"""Normal and chi-square distribution functions and their inverses.

Only the standard library is used: the normal quantile is Wichura's AS241
(PPND16) followed by one Newton step, and the chi-square CDF is the
regularized lower incomplete gamma function evaluated by series or
continued fraction.
"""

from __future__ import annotations

import math

_SQRT2 = math.sqrt(2.0)
_SQRT2PI = math.sqrt(2.0 * math.pi)

# AS241 coefficients
_A = (3.387132872796366608, 133.14166789178437745, 1971.5909503065514427,
      13731.693765509461125, 45921.953931549871457, 67265.770927008700853,
      33430.575583588128105, 2509.0809287301226727)
_B = (1.0, 42.313330701600911252, 687.1870074920579083, 5394.1960214247511077,
      21213.794301586595867, 39307.89580009271061, 28729.085735721942674,
      5226.495278852545925)
_C = (1.42343711074968357734, 4.6303378461565452959, 5.7694972214606914055,
      3.64784832476320460504, 1.27045825245236838258, 0.24178072517745061177,
      0.0227238449892691845833, 7.7454501427834140764e-4)
_D = (1.0, 2.05319162663775882187, 1.6763848301838038494, 0.68976733498510000455,
      0.14810397642748007459, 0.0151986665636164571966, 5.475938084995344946e-4,
      1.05075007164441684324e-9)
_E = (6.6579046435011037772, 5.4637849111641143699, 1.7848265399172913358,
      0.29656057182850489123, 0.026532189526576123093, 0.0012426609473880784386,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (1.0, 0.59983220655588793769, 0.13692988092273580531, 0.0148753612908506148525,
      7.868691311456132591e-4, 1.8463183175100546818e-5, 1.4215117583164458887e-7,
      2.04426310338993978564e-15)


def _poly(coef, x):
    acc = 0.0
    for c in reversed(coef):
        acc = acc * x + c
    return acc


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / _SQRT2)


def norm_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / _SQRT2PI


def _ppnd16(q: float) -> float:
    r = q - 0.5
    if abs(r) <= 0.425:
        s = 0.180625 - r * r
        return r * _poly(_A, s) / _poly(_B, s)
    s = q if r < 0 else 1.0 - q
    s = math.sqrt(-math.log(s))
    if s <= 5.0:
        s -= 1.6
        x = _poly(_C, s) / _poly(_D, s)
    else:
        s -= 5.0
        x = _poly(_E, s) / _poly(_F, s)
    return -x if r < 0 else x


def std_normal_quantile(q: float) -> float:
    """Inverse of the standard normal CDF."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile level must lie in (0, 1), got {q!r}")
    x = _ppnd16(q)
    # Newton step on the tail that is numerically well conditioned
    if q < 0.5:
        err = norm_cdf(x) - q
    else:
        err = (1.0 - q) - 0.5 * math.erfc(x / _SQRT2)
    dens = norm_pdf(x)
    if dens > 0.0:
        x -= err / dens
    return x


def _gamma_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(10000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-17:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cf(a: float, x: float) -> float:
    # modified Lentz for the upper tail Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_gamma_p(a: float, x: float) -> float:
    """Lower regularized incomplete gamma P(a, x)."""
    if a <= 0:
        raise ValueError("shape must be positive")
    if x <= 0.0:
        return 0.0
    if x < a + 1.0:
        return _gamma_series(a, x)
    return 1.0 - _gamma_cf(a, x)


def regularized_gamma_q(a: float, x: float) -> float:
    if a <= 0:
        raise ValueError("shape must be positive")
    if x <= 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cf(a, x)


def chi2_cdf(x: float, df: int) -> float:
    return regularized_gamma_p(0.5 * df, 0.5 * x)


def chi2_sf(x: float, df: int) -> float:
    return regularized_gamma_q(0.5 * df, 0.5 * x)


def _chi2_pdf(x: float, df: int) -> float:
    a = 0.5 * df
    if x <= 0.0:
        return 0.0
    return math.exp((a - 1.0) * math.log(x) - 0.5 * x - a * math.log(2.0) - math.lgamma(a))


def chi2_quantile(df: int, q: float) -> float:
    """Inverse chi-square CDF with ``df`` degrees of freedom."""
    if int(df) != df or df < 1:
        raise ValueError(f"degrees of freedom must be a positive integer, got {df!r}")
    if not 0.0 < q < 1.0:
        raise ValueError(f"quantile level must lie in (0, 1), got {q!r}")
    df = int(df)
    # Wilson-Hilferty start
    z = std_normal_quantile(q)
    h = 2.0 / (9.0 * df)
    x = df * max(1.0 - h + z * math.sqrt(h), 1e-3) ** 3
    lo, hi = 0.0, max(2.0 * x, 1.0)
    while chi2_cdf(hi, df) < q:
        hi *= 2.0
    upper = q > 0.5
    target = 1.0 - q if upper else q
    for _ in range(200):
        if not lo < x < hi:
            x = 0.5 * (lo + hi)
        # work on the smaller tail for accuracy
        val = chi2_sf(x, df) if upper else chi2_cdf(x, df)
        resid = (target - val) if upper else (val - target)
        if resid > 0:
            hi = x
        else:
            lo = x
        dens = _chi2_pdf(x, df)
        step = resid / dens if dens > 0 else 0.0
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-14 * max(1.0, x):
            return x_new
        x = x_new
    return x
