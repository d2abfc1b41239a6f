"""Seeded AR(1) and cointegrated-pair generators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import XorShift64Star

__all__ = ["Ar1Config", "gen_ar1", "gen_cointegrated_pair"]


@dataclass(frozen=True)
class Ar1Config:
    """``s_t = coefficient * s_{t-1} + innovation_sigma * e_t`` with ``s_0 = 0``."""

    coefficient: float
    length: int
    innovation_sigma: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if abs(self.coefficient) > 1:
            raise ValueError("|coefficient| must be <= 1")
        if not self.innovation_sigma > 0:
            raise ValueError("innovation_sigma must be > 0")
        if self.length < 0:
            raise ValueError("length must be >= 0")


def _ar1(rho: float, sigma: float, length: int, rng: XorShift64Star) -> np.ndarray:
    out = np.zeros(length)
    value = 0.0
    normal = rng.normal
    for t in range(1, length):
        value = rho * value + sigma * normal()
        out[t] = value
    return out


def gen_ar1(config: Ar1Config) -> np.ndarray:
    rng = XorShift64Star(config.seed)
    return _ar1(config.coefficient, config.innovation_sigma, config.length, rng)


def gen_cointegrated_pair(
    gamma: float,
    residual_rho: float,
    n: int,
    seed: int,
    sigma: float = 1.0,
    residual_sigma: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(y, x)`` with ``x`` a random walk and ``y = gamma * x + u``.

    ``u`` is a stationary AR(1) with coefficient ``residual_rho``.  Both
    draw from one stream: all of ``x``'s innovations first, then ``u``'s.
    """
    if abs(residual_rho) >= 1:
        raise ValueError("|residual_rho| must be < 1 for a stationary residual")
    if n < 0:
        raise ValueError("n must be >= 0")
    rng = XorShift64Star(seed)
    x = _ar1(1.0, sigma, n, rng)
    u = _ar1(residual_rho, residual_sigma, n, rng)
    return gamma * x + u, x
