"""Latency-arbitrage detection and latency/exposure elasticity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

__all__ = ["EXPOSURE_ELASTICITY", "LatencyArbitrage", "QuotePair", "exposure_elasticity", "lao_detect"]

# Percent change in exposure to unfavourable order-book moves per percent
# change in latency.
EXPOSURE_ELASTICITY = 0.9


@dataclass(frozen=True)
class QuotePair:
    """Quotes for one security on two markets plus the national best bid/offer.

    ``t_start``/``t_end`` bound the observation window; any type with
    ordering and subtraction works (float seconds, integer ns, datetimes).
    """

    bid_m1: float
    ask_m1: float
    bid_m2: float
    ask_m2: float
    nbb: float
    nbo: float
    t_start: Any
    t_end: Any

    def __post_init__(self) -> None:
        for name in ("bid_m1", "ask_m1", "bid_m2", "ask_m2", "nbb", "nbo"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.t_end < self.t_start:
            raise ValueError("t_end must not precede t_start")


@dataclass(frozen=True)
class LatencyArbitrage:
    profit_per_share: float
    duration: Any


def lao_detect(q: QuotePair) -> Optional[LatencyArbitrage]:
    """Buy on market 2 at its ask, sell on market 1 at its bid, if all three conditions hold.

    Crossed market (``bid_m1 > ask_m2``), NBBO-consistent prices
    (``bid_m1 >= nbb`` and ``ask_m2 <= nbo``) and a window of positive length.
    """
    crossed = q.bid_m1 > q.ask_m2
    within_nbbo = q.bid_m1 >= q.nbb and q.ask_m2 <= q.nbo
    positive_time = q.t_end > q.t_start
    if crossed and within_nbbo and positive_time:
        return LatencyArbitrage(q.bid_m1 - q.ask_m2, q.t_end - q.t_start)
    return None


def exposure_elasticity(latency_change_pct: float) -> float:
    return EXPOSURE_ELASTICITY * latency_change_pct
