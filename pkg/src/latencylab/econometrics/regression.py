"""OLS, augmented Dickey-Fuller and Engle-Granger two-step cointegration.

ADF regression::

    d s_t = [c] + delta * s_{t-1} + sum_{j=1..p} phi_j * d s_{t-j} + e_t

The statistic is the t-ratio of ``delta``.  The lag order ``p`` is picked by
AIC over ``0..maxlag`` (all candidates fitted on one common sample), then the
chosen model is refitted on the longest sample it allows.  The default
``maxlag`` is the Schwert bound ``floor(12 * (T/100) ** 0.25)``.

Only decisions against tabulated critical values are produced, not p-values.
Critical values come from the response surfaces in J. G. MacKinnon,
"Critical Values for Cointegration Tests", Queen's Economics Department
Working Paper 1227 (2010), Table 2::

    cv(T) = b0 + b1 / T + b2 / T**2 + b3 / T**3
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

__all__ = [
    "LEVELS",
    "AdfResult",
    "CointResult",
    "DegenerateRegressor",
    "LengthMismatch",
    "RegressionResult",
    "SeriesTooShort",
    "adf_test",
    "critical_values",
    "engle_granger",
    "ols",
    "schwert_maxlag",
]

LEVELS = ("1%", "5%", "10%")
MIN_ADF_LENGTH = 20
MIN_COINT_LENGTH = 30

# (number of I(1) variables, deterministic terms) -> level -> (b0, b1, b2, b3)
_MACKINNON_2010 = {
    (1, "n"): {
        "1%": (-2.56574, -2.2358, -3.627, 0.0),
        "5%": (-1.94100, -0.2686, -3.365, 31.223),
        "10%": (-1.61682, 0.2656, -2.714, 25.364),
    },
    (1, "c"): {
        "1%": (-3.43035, -6.5393, -16.786, -79.433),
        "5%": (-2.86154, -2.8903, -4.234, -40.040),
        "10%": (-2.56677, -1.5384, -2.809, 0.0),
    },
    (2, "c"): {
        "1%": (-3.89644, -10.9519, -33.527, 0.0),
        "5%": (-3.33613, -6.1101, -6.823, 0.0),
        "10%": (-3.04445, -4.2412, -2.720, 0.0),
    },
}


class LengthMismatch(ValueError):
    pass


class DegenerateRegressor(ValueError):
    pass


class SeriesTooShort(ValueError):
    pass


def critical_values(nobs: int, trend: str = "c", n_vars: int = 1) -> dict[str, float]:
    try:
        table = _MACKINNON_2010[(n_vars, trend)]
    except KeyError:
        raise ValueError(f"no critical values for n_vars={n_vars}, trend={trend!r}") from None
    inv = 1.0 / nobs
    return {level: b0 + b1 * inv + b2 * inv**2 + b3 * inv**3 for level, (b0, b1, b2, b3) in table.items()}


def schwert_maxlag(length: int) -> int:
    return int(math.floor(12.0 * (length / 100.0) ** 0.25))


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    residuals: np.ndarray = field(repr=False)


def ols(y: Sequence[float], x: Sequence[float]) -> RegressionResult:
    """Least-squares fit of ``y = intercept + slope * x``."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != x.shape or y.ndim != 1:
        raise LengthMismatch(f"y has shape {y.shape}, x has shape {x.shape}")
    if len(y) < 3:
        raise SeriesTooShort("ols needs at least 3 observations")
    if np.ptp(x) == 0:
        raise DegenerateRegressor("x is constant")
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    slope = float(np.dot(dx, y - ym) / np.dot(dx, dx))
    intercept = float(ym - slope * xm)
    return RegressionResult(slope, intercept, y - intercept - slope * x)


@dataclass(frozen=True)
class _Fit:
    params: np.ndarray
    ssr: float
    nobs: int
    cov_unscaled: np.ndarray

    @property
    def aic(self) -> float:
        n = self.nobs
        llf = -0.5 * n * (math.log(2 * math.pi) + math.log(self.ssr / n) + 1.0)
        return -2.0 * llf + 2.0 * len(self.params)

    def tvalue(self, j: int) -> float:
        sigma2 = self.ssr / (self.nobs - len(self.params))
        return float(self.params[j] / math.sqrt(sigma2 * self.cov_unscaled[j, j]))


def _fit(design: np.ndarray, target: np.ndarray) -> _Fit:
    q, r = np.linalg.qr(design)
    params = np.linalg.solve(r, q.T @ target)
    resid = target - design @ params
    r_inv = np.linalg.inv(r)
    return _Fit(params, float(resid @ resid), len(target), r_inv @ r_inv.T)


def _design(x: np.ndarray, lags: int, nobs: int, trend: str) -> tuple[np.ndarray, np.ndarray]:
    """Regressors and target for the last ``nobs`` differences with ``lags`` lagged differences."""
    dx = np.diff(x)
    end = len(dx)
    columns = []
    if trend == "c":
        columns.append(np.ones(nobs))
    columns.append(x[end - nobs : end])  # s_{t-1}
    for j in range(1, lags + 1):
        columns.append(dx[end - nobs - j : end - j])
    return np.column_stack(columns), dx[end - nobs :]


@dataclass(frozen=True)
class AdfResult:
    t_stat: float
    lags_used: int
    nobs: int
    trend: str
    critical_values: dict[str, float]
    decision_at: dict[str, bool]

    @property
    def reject_at_5pct(self) -> bool:
        return self.decision_at["5%"]


def adf_test(
    series: Sequence[float],
    max_lags: Optional[int] = None,
    trend: Literal["c", "n"] = "c",
    autolag: Optional[Literal["aic"]] = "aic",
) -> AdfResult:
    """Augmented Dickey-Fuller unit-root test.

    ``trend="c"`` includes a constant (raw series); ``trend="n"`` has no
    deterministic terms (regression residuals).  With ``autolag=None`` the
    model uses exactly ``max_lags`` lags.  ``decision_at[level]`` is True
    when the unit root is rejected at that level.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ValueError("series must be one-dimensional")
    if len(x) < MIN_ADF_LENGTH:
        raise SeriesTooShort(f"ADF needs at least {MIN_ADF_LENGTH} observations, got {len(x)}")
    if trend not in ("c", "n"):
        raise ValueError(f"unknown trend {trend!r}")
    if not np.all(np.isfinite(x)):
        raise ValueError("series contains non-finite values")
    ntrend = 1 if trend == "c" else 0
    cap = len(x) // 2 - ntrend - 1
    maxlag = schwert_maxlag(len(x)) if max_lags is None else max_lags
    if maxlag < 0:
        raise ValueError("max_lags must be >= 0")
    maxlag = min(maxlag, cap)
    level_col = ntrend

    if autolag is None:
        best = maxlag
    elif autolag == "aic":
        common = len(x) - 1 - maxlag
        design, target = _design(x, maxlag, common, trend)
        best, best_aic = 0, math.inf
        for lags in range(maxlag + 1):
            aic = _fit(design[:, : ntrend + 1 + lags], target).aic
            if aic < best_aic:
                best, best_aic = lags, aic
    else:
        raise ValueError(f"unknown autolag {autolag!r}")

    nobs = len(x) - 1 - best
    fit = _fit(*_design(x, best, nobs, trend))
    t_stat = fit.tvalue(level_col)
    crit = critical_values(nobs, trend, n_vars=1)
    return AdfResult(t_stat, best, nobs, trend, crit, {k: t_stat < v for k, v in crit.items()})


@dataclass(frozen=True)
class CointResult:
    t_stat: float
    lags_used: int
    reject_at_5pct: bool
    gamma: float
    intercept: float
    critical_values: dict[str, float]
    decision_at: dict[str, bool]


def engle_granger(y: Sequence[float], x: Sequence[float], max_lags: Optional[int] = None) -> CointResult:
    """Two-step test: OLS of ``y`` on ``x``, then ADF (no constant) on the residuals.

    The statistic is judged against two-variable Engle-Granger critical
    values, not the plain ADF ones.
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != x.shape:
        raise LengthMismatch(f"y has shape {y.shape}, x has shape {x.shape}")
    if len(y) < MIN_COINT_LENGTH:
        raise SeriesTooShort(f"cointegration test needs at least {MIN_COINT_LENGTH} observations, got {len(y)}")
    reg = ols(y, x)
    adf = adf_test(reg.residuals, max_lags=max_lags, trend="n")
    crit = critical_values(len(y) - 1, "c", n_vars=2)
    decisions = {k: adf.t_stat < v for k, v in crit.items()}
    return CointResult(adf.t_stat, adf.lags_used, decisions["5%"], reg.slope, reg.intercept, crit, decisions)
