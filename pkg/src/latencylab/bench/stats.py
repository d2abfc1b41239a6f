"""Descriptive statistics and Student t-tests.

The t distribution is evaluated through the regularized incomplete beta
function::

    P(|T| >= |t|) = I_x(df/2, 1/2),   x = df / (df + t**2)

``I_x(a, b)`` uses the continued fraction of Numerical Recipes (3rd ed.,
section 6.4) evaluated with the modified Lentz method, switching to the
symmetry ``I_x(a, b) = 1 - I_{1-x}(b, a)`` when ``x > (a+1)/(a+b+2)`` so the
fraction always converges quickly.
"""

from __future__ import annotations

import enum
import math
import statistics
from dataclasses import dataclass
from typing import Sequence

from ..econometrics.regression import LengthMismatch
from ..pairs.strategy import ZeroVariance

__all__ = [
    "LengthMismatch",
    "SummaryStats",
    "TTestKind",
    "TTestResult",
    "TooFewSamples",
    "ZeroVariance",
    "paired_t_test",
    "regularized_incomplete_beta",
    "student_t_cdf",
    "student_t_two_sided_p",
    "summarize",
    "two_sample_t_test",
]

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


class TooFewSamples(ValueError):
    pass


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    stddev: float
    min: float
    max: float
    median: float
    n: int

    def to_dict(self) -> dict[str, float]:
        return {
            "n": self.n,
            "mean": self.mean,
            "stddev": self.stddev,
            "min": self.min,
            "median": self.median,
            "max": self.max,
        }


def summarize(samples: Sequence[float]) -> SummaryStats:
    """Mean, sample standard deviation (N-1), extremes and median."""
    data = [float(s) for s in samples]
    if len(data) < 2:
        raise TooFewSamples(f"need at least 2 samples, got {len(data)}")
    return SummaryStats(
        mean=statistics.fmean(data),
        stddev=statistics.stdev(data),
        min=min(data),
        max=max(data),
        median=statistics.median(data),
        n=len(data),
    )


def _beta_cf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def _ibeta(a: float, b: float, x: float, y: float) -> float:
    """``I_x(a, b)`` with ``y = 1 - x`` supplied separately to avoid cancellation."""
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log(y)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_cf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _beta_cf(b, a, y) / b


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    return _ibeta(a, b, x, 1.0 - x)


def student_t_two_sided_p(t: float, df: float) -> float:
    if not df > 0:
        raise ValueError("df must be positive")
    if math.isnan(t):
        return math.nan
    if math.isinf(t):
        return 0.0
    t2 = t * t
    return _ibeta(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2))


def student_t_cdf(t: float, df: float) -> float:
    tail = 0.5 * student_t_two_sided_p(t, df)
    return 1.0 - tail if t > 0 else tail


class TTestKind(enum.Enum):
    PAIRED = "paired"
    TWO_SAMPLE = "two_sample"


@dataclass(frozen=True)
class TTestResult:
    t_stat: float
    degrees_of_freedom: float
    p_value: float
    kind: TTestKind

    def to_dict(self) -> dict[str, object]:
        return {
            "kind": self.kind.value,
            "t_stat": self.t_stat,
            "degrees_of_freedom": self.degrees_of_freedom,
            "p_value": self.p_value,
        }


def paired_t_test(a: Sequence[float], b: Sequence[float]) -> TTestResult:
    """Paired test on ``d = a - b``; ``ZeroVariance`` if every difference is equal."""
    if len(a) != len(b):
        raise LengthMismatch(f"paired samples differ in length: {len(a)} vs {len(b)}")
    n = len(a)
    if n < 2:
        raise TooFewSamples("paired t-test needs at least 2 pairs")
    d = [float(x) - float(y) for x, y in zip(a, b)]
    mean = math.fsum(d) / n
    var = math.fsum((v - mean) ** 2 for v in d) / (n - 1)
    if var <= 0.0:
        raise ZeroVariance("paired differences have zero variance")
    t = mean / math.sqrt(var / n)
    df = n - 1
    return TTestResult(t, float(df), student_t_two_sided_p(t, df), TTestKind.PAIRED)


def two_sample_t_test(a: Sequence[float], b: Sequence[float]) -> TTestResult:
    """Welch's unequal-variance test with Welch-Satterthwaite degrees of freedom."""
    sa = summarize(a)
    sb = summarize(b)
    va = sa.stddev**2 / sa.n
    vb = sb.stddev**2 / sb.n
    if va + vb <= 0.0:
        raise ZeroVariance("both samples are constant")
    t = (sa.mean - sb.mean) / math.sqrt(va + vb)
    # Normalized shares so tiny variances do not underflow when squared.
    wa = va / (va + vb)
    wb = vb / (va + vb)
    df = 1.0 / (wa**2 / (sa.n - 1) + wb**2 / (sb.n - 1))
    return TTestResult(t, df, student_t_two_sided_p(t, df), TTestKind.TWO_SAMPLE)
