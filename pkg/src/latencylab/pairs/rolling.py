"""Fixed-window spread statistics."""

from __future__ import annotations

import math
from typing import Optional, Sequence

__all__ = ["LANES", "REFRESH_INTERVAL", "NonFiniteInput", "RollingStats", "lane_sums"]

LANES = 4
REFRESH_INTERVAL = 4096


class NonFiniteInput(ValueError):
    pass


def lane_sums(values: Sequence[float]) -> tuple[float, float]:
    """Sum and sum of squares accumulated in four independent lanes.

    Lane ``k`` takes elements ``k, k+4, k+8, ...``; the lanes are combined
    pairwise at the end, mirroring a 4-wide vector register reduction.  A
    tail shorter than four elements is folded into the leading lanes.
    """
    s0 = s1 = s2 = s3 = 0.0
    q0 = q1 = q2 = q3 = 0.0
    n = len(values)
    body = n - n % LANES
    for j in range(0, body, LANES):
        v0 = values[j]
        v1 = values[j + 1]
        v2 = values[j + 2]
        v3 = values[j + 3]
        s0 += v0
        s1 += v1
        s2 += v2
        s3 += v3
        q0 += v0 * v0
        q1 += v1 * v1
        q2 += v2 * v2
        q3 += v3 * v3
    for j in range(body, n):
        v = values[j]
        s0 += v
        q0 += v * v
    return (s0 + s1) + (s2 + s3), (q0 + q1) + (q2 + q3)


class RollingStats:
    """O(1)-update mean and population standard deviation over the last ``N`` values.

    The running sums are rebuilt from the window every ``REFRESH_INTERVAL``
    pushes so floating-point drift stays bounded.
    """

    __slots__ = ("window", "N", "write_index", "count", "running_sum", "running_sum_sq", "_since_refresh")

    def __init__(self, window: int) -> None:
        if window < 1:
            raise ValueError("window must be >= 1")
        self.N = window
        self.window = [0.0] * window
        self.write_index = 0
        self.count = 0
        self.running_sum = 0.0
        self.running_sum_sq = 0.0
        self._since_refresh = 0

    @property
    def full(self) -> bool:
        return self.count >= self.N

    def push(self, spread: float) -> Optional[tuple[float, float]]:
        """Insert ``spread``; return ``(mean, stddev)`` once the window is full, else ``None``."""
        if not math.isfinite(spread):
            raise NonFiniteInput(f"spread must be finite, got {spread!r}")
        idx = self.write_index
        old = self.window[idx] if self.count >= self.N else 0.0
        self.window[idx] = spread
        idx += 1
        self.write_index = 0 if idx == self.N else idx
        self.count += 1
        self._since_refresh += 1
        if self._since_refresh >= REFRESH_INTERVAL:
            self.refresh()
        else:
            self.running_sum += spread - old
            self.running_sum_sq += spread * spread - old * old
        if self.count < self.N:
            return None
        return self.mean_std()

    def refresh(self) -> None:
        live = self.window if self.count >= self.N else self.window[: self.count]
        self.running_sum, self.running_sum_sq = lane_sums(live)
        self._since_refresh = 0

    def mean_std(self) -> tuple[float, float]:
        mean = self.running_sum / self.N
        var = self.running_sum_sq / self.N - mean * mean
        return mean, math.sqrt(var) if var > 0.0 else 0.0

    def values(self) -> list[float]:
        """Window contents, oldest first."""
        if self.count < self.N:
            return self.window[: self.count]
        i = self.write_index
        return self.window[i:] + self.window[:i]
