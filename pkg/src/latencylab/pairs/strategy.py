"""Z-score signals, two-leg portfolio accounting and the Sharpe ratio."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from datetime import date
from typing import Optional, Sequence

__all__ = [
    "Direction",
    "Portfolio",
    "Position",
    "Signal",
    "Thresholds",
    "Trade",
    "ZeroStdDev",
    "ZeroVariance",
    "sharpe",
    "sharpe_from_returns",
    "signal_from_z",
    "step_portfolio",
    "zscore",
]


class ZeroStdDev(ZeroDivisionError):
    pass


class ZeroVariance(ValueError):
    pass


class Signal(enum.Enum):
    OPEN_SHORT_SPREAD = "open_short_spread"  # short A, long B
    OPEN_LONG_SPREAD = "open_long_spread"  # long A, short B
    CLOSE_POSITIONS = "close_positions"
    HOLD = "hold"


class Direction(enum.Enum):
    SHORT_SPREAD = "short_spread"
    LONG_SPREAD = "long_spread"


@dataclass(frozen=True)
class Thresholds:
    entry: float = 1.0
    exit: float = 0.8

    def __post_init__(self) -> None:
        if not 0 <= self.exit <= self.entry:
            raise ValueError("thresholds must satisfy 0 <= exit <= entry")


DEFAULT_THRESHOLDS = Thresholds()


def zscore(current_spread: float, mean: float, stddev: float) -> float:
    if not stddev > 0:
        raise ZeroStdDev(f"stddev must be positive, got {stddev!r}")
    return (current_spread - mean) / stddev


def signal_from_z(z: float, has_position: bool, thresholds: Thresholds = DEFAULT_THRESHOLDS) -> Signal:
    """Map a z-score to a trading decision.

    Comparisons are strict, so a z exactly on a threshold is neutral.  Open
    signals while a position is open, and close signals while flat, both
    come back as ``HOLD``.
    """
    if z > thresholds.entry:
        return Signal.HOLD if has_position else Signal.OPEN_SHORT_SPREAD
    if z < -thresholds.entry:
        return Signal.HOLD if has_position else Signal.OPEN_LONG_SPREAD
    if abs(z) < thresholds.exit:
        return Signal.CLOSE_POSITIONS if has_position else Signal.HOLD
    return Signal.HOLD


@dataclass(frozen=True)
class Position:
    direction: Direction
    shares_a: int
    shares_b: int
    entry_a: float
    entry_b: float
    entry_date: date
    open_cost: float = 0.0

    def market_value(self, price_a: float, price_b: float) -> float:
        return self.shares_a * price_a + self.shares_b * price_b

    def gross_pnl(self, price_a: float, price_b: float) -> float:
        return self.shares_a * (price_a - self.entry_a) + self.shares_b * (price_b - self.entry_b)


@dataclass(frozen=True)
class Trade:
    direction: Direction
    entry_date: date
    exit_date: date
    entry_a: float
    entry_b: float
    exit_a: float
    exit_b: float
    shares: int
    pnl: float


@dataclass
class Portfolio:
    """Cash account holding at most one market-neutral pair position.

    ``step_portfolio`` updates the instance in place and returns it.
    """

    cash: float
    shares_per_leg: int = 1
    cost_per_leg: float = 0.0
    position: Optional[Position] = None
    equity_curve: list[float] = field(default_factory=list)
    trade_log: list[Trade] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.shares_per_leg < 1:
            raise ValueError("shares_per_leg must be >= 1")
        if self.cost_per_leg < 0:
            raise ValueError("cost_per_leg must be >= 0")

    def equity(self, price_a: float, price_b: float) -> float:
        if self.position is None:
            return self.cash
        return self.cash + self.position.market_value(price_a, price_b)

    def unrealized_pnl(self, price_a: float, price_b: float) -> float:
        if self.position is None:
            return 0.0
        return self.position.gross_pnl(price_a, price_b) - self.position.open_cost

    @property
    def realized_pnl(self) -> float:
        return math.fsum(t.pnl for t in self.trade_log)


def step_portfolio(portfolio: Portfolio, signal: Signal, price_a: float, price_b: float, day: date) -> Portfolio:
    if not (price_a > 0 and price_b > 0):
        raise ValueError("prices must be positive")
    position = portfolio.position
    leg_cost = portfolio.cost_per_leg
    if position is None and signal in (Signal.OPEN_SHORT_SPREAD, Signal.OPEN_LONG_SPREAD):
        q = portfolio.shares_per_leg
        if signal is Signal.OPEN_SHORT_SPREAD:
            direction, shares_a, shares_b = Direction.SHORT_SPREAD, -q, q
        else:
            direction, shares_a, shares_b = Direction.LONG_SPREAD, q, -q
        position = Position(direction, shares_a, shares_b, price_a, price_b, day, 2 * leg_cost)
        portfolio.cash -= position.market_value(price_a, price_b) + position.open_cost
        portfolio.position = position
    elif position is not None and signal is Signal.CLOSE_POSITIONS:
        close_cost = 2 * leg_cost
        portfolio.cash += position.market_value(price_a, price_b) - close_cost
        pnl = position.gross_pnl(price_a, price_b) - position.open_cost - close_cost
        portfolio.trade_log.append(
            Trade(
                position.direction,
                position.entry_date,
                day,
                position.entry_a,
                position.entry_b,
                price_a,
                price_b,
                abs(position.shares_a),
                pnl,
            )
        )
        portfolio.position = None
    portfolio.equity_curve.append(portfolio.equity(price_a, price_b))
    return portfolio


def sharpe_from_returns(excess_returns: Sequence[float], periods_per_year: float = 252.0) -> float:
    """Annualised mean over sample standard deviation of per-period excess returns."""
    n = len(excess_returns)
    if n < 2:
        raise ZeroVariance("need at least two returns to measure dispersion")
    mean = math.fsum(excess_returns) / n
    var = math.fsum((r - mean) ** 2 for r in excess_returns) / (n - 1)
    sd = math.sqrt(var)
    if sd <= 1e-12 * max(1.0, abs(mean)):
        raise ZeroVariance("excess returns have zero variance")
    return mean / sd * math.sqrt(periods_per_year)


def sharpe(equity_curve: Sequence[float], risk_free_rate: float = 0.0, periods_per_year: float = 252.0) -> float:
    """Sharpe ratio of simple per-period returns of an equity curve.

    ``risk_free_rate`` is per period.
    """
    if len(equity_curve) < 2:
        raise ValueError("need at least two equity points")
    returns = [cur / prev - 1.0 - risk_free_rate for prev, cur in zip(equity_curve, equity_curve[1:])]
    return sharpe_from_returns(returns, periods_per_year)
