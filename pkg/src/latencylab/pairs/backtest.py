"""Bar-by-bar pairs-trading backtest with a scalar and an optimized z-score path.

Both paths see the same inputs: on bar ``i`` (``i >= N``) the window is the
``N`` spreads of bars ``i-N .. i-1`` and the current spread is that of bar
``i``.  The scalar path rebuilds the window and takes a two-pass mean and
standard deviation every bar.  The optimized path keeps the window in a
fixed-size array with a rolling write index and reduces it with four
accumulator lanes, so it requires ``N % 4 == 0``.
"""

from __future__ import annotations

import enum
import json
import math
import time
from dataclasses import dataclass, field, replace
from datetime import date
from typing import Any, Iterator, Optional

from .data import PricePair
from .rolling import lane_sums
from .strategy import (
    Portfolio,
    Signal,
    Thresholds,
    Trade,
    ZeroVariance,
    sharpe,
    signal_from_z,
    step_portfolio,
)

__all__ = [
    "FLAT_RELATIVE_VARIANCE",
    "BacktestConfig",
    "BacktestReport",
    "Equivalence",
    "Mode",
    "WindowNotMultipleOfFour",
    "WindowTooLarge",
    "backtest",
    "compare_paths",
    "optimized_zscores",
    "scalar_zscores",
]

# A window whose variance is below this fraction of mean**2 is treated as flat
# and produces no z-score (the bar is a Hold).
FLAT_RELATIVE_VARIANCE = 1e-12


class WindowTooLarge(ValueError):
    pass


class WindowNotMultipleOfFour(ValueError):
    pass


class Mode(enum.Enum):
    SCALAR = "scalar"
    OPTIMIZED = "optimized"


@dataclass(frozen=True)
class BacktestConfig:
    window: int = 16
    thresholds: Thresholds = field(default_factory=Thresholds)
    initial_cash: float = 1_000_000.0
    mode: Mode = Mode.SCALAR
    shares_per_leg: int = 1
    cost_per_leg: float = 0.0
    hedge_ratio: Optional[float] = None
    risk_free_rate: float = 0.0
    periods_per_year: float = 252.0


def _is_flat(var: float, mean: float) -> bool:
    return var <= FLAT_RELATIVE_VARIANCE * mean * mean


def _calc_mean(values: list[float]) -> float:
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def _calc_stddev(values: list[float], mean: float) -> float:
    acc = 0.0
    for v in values:
        d = v - mean
        acc += d * d
    return math.sqrt(acc / len(values))


def scalar_zscores(a: tuple[float, ...], b: tuple[float, ...], window: int, gamma: float = 1.0) -> Iterator[Optional[float]]:
    for i in range(window, len(a)):
        spread = [a[j] - gamma * b[j] for j in range(i - window, i)]
        mean = _calc_mean(spread)
        stddev = _calc_stddev(spread, mean)
        current = a[i] - gamma * b[i]
        if _is_flat(stddev * stddev, mean):
            yield None
        else:
            yield (current - mean) / stddev


def optimized_zscores(
    a: tuple[float, ...], b: tuple[float, ...], window: int, gamma: float = 1.0
) -> Iterator[Optional[float]]:
    if window % 4:
        raise WindowNotMultipleOfFour(f"optimized mode needs a window divisible by 4, got {window}")
    buffer = [a[j] - gamma * b[j] for j in range(window)]
    write_index = 0
    inv_n = 1.0 / window
    for i in range(window, len(a)):
        total, total_sq = lane_sums(buffer)
        mean = total * inv_n
        var = total_sq * inv_n - mean * mean
        current = a[i] - gamma * b[i]
        if _is_flat(var, mean):
            yield None
        else:
            yield (current - mean) / math.sqrt(var)
        buffer[write_index] = current
        write_index += 1
        if write_index == window:
            write_index = 0


@dataclass
class BacktestReport:
    mode: Mode
    window: int
    initial_cash: float
    final_balance: float
    sharpe: Optional[float]
    dates: list[date]
    signals: list[Signal]
    zscores: list[Optional[float]]
    equity_curve: list[float]
    trade_log: list[Trade]
    unrealized_pnl: float
    open_position: bool
    elapsed_ns: int = 0

    @property
    def realized_pnl(self) -> float:
        return math.fsum(t.pnl for t in self.trade_log)

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode.value,
            "window": self.window,
            "initial_cash": self.initial_cash,
            "final_balance": self.final_balance,
            "realized_pnl": self.realized_pnl,
            "unrealized_pnl": self.unrealized_pnl,
            "open_position": self.open_position,
            "sharpe": self.sharpe,
            "num_trades": len(self.trade_log),
            "elapsed_ns": self.elapsed_ns,
            "bars": [
                {"date": d.isoformat(), "zscore": z, "signal": s.value, "equity": e}
                for d, z, s, e in zip(self.dates, self.zscores, self.signals, self.equity_curve)
            ],
            "trades": [
                {
                    "direction": t.direction.value,
                    "entry_date": t.entry_date.isoformat(),
                    "exit_date": t.exit_date.isoformat(),
                    "entry_a": t.entry_a,
                    "entry_b": t.entry_b,
                    "exit_a": t.exit_a,
                    "exit_b": t.exit_b,
                    "shares": t.shares,
                    "pnl": t.pnl,
                }
                for t in self.trade_log
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        sharpe_txt = "n/a" if self.sharpe is None else f"{self.sharpe:.4f}"
        lines = [
            f"mode            {self.mode.value}",
            f"window          {self.window}",
            f"initial cash    {self.initial_cash:,.2f}",
            f"final balance   {self.final_balance:,.2f}",
            f"realized P&L    {self.realized_pnl:,.2f}",
            f"unrealized P&L  {self.unrealized_pnl:,.2f}",
            f"sharpe          {sharpe_txt}",
            f"trades          {len(self.trade_log)}",
            "",
            f"{'direction':<14}{'entry':>12}{'exit':>12}{'shares':>8}{'pnl':>14}",
        ]
        for t in self.trade_log:
            lines.append(
                f"{t.direction.value:<14}{t.entry_date.isoformat():>12}{t.exit_date.isoformat():>12}"
                f"{t.shares:>8}{t.pnl:>14.4f}"
            )
        return "\n".join(lines) + "\n"


def backtest(pair: PricePair, config: BacktestConfig = BacktestConfig()) -> BacktestReport:
    n = pair.n
    window = config.window
    if window < 1:
        raise ValueError("window must be >= 1")
    if n <= window:
        raise WindowTooLarge(f"window {window} needs more than {window} bars, got {n}")
    if config.mode is Mode.OPTIMIZED and window % 4:
        raise WindowNotMultipleOfFour(f"optimized mode needs a window divisible by 4, got {window}")

    a = pair.series_a.prices
    b = pair.series_b.prices
    dates = pair.dates
    gamma = 1.0 if config.hedge_ratio is None else config.hedge_ratio
    path = optimized_zscores if config.mode is Mode.OPTIMIZED else scalar_zscores

    portfolio = Portfolio(config.initial_cash, config.shares_per_leg, config.cost_per_leg)
    thresholds = config.thresholds
    signals: list[Signal] = []
    zscores: list[Optional[float]] = []

    start = time.perf_counter_ns()
    for i, z in enumerate(path(a, b, window, gamma), start=window):
        if z is None:
            signal = Signal.HOLD
        else:
            signal = signal_from_z(z, portfolio.position is not None, thresholds)
        step_portfolio(portfolio, signal, a[i], b[i], dates[i])
        signals.append(signal)
        zscores.append(z)
    elapsed = time.perf_counter_ns() - start

    try:
        ratio: Optional[float] = sharpe(portfolio.equity_curve, config.risk_free_rate, config.periods_per_year)
    except ZeroVariance:
        ratio = None
    return BacktestReport(
        mode=config.mode,
        window=window,
        initial_cash=config.initial_cash,
        final_balance=portfolio.equity_curve[-1],
        sharpe=ratio,
        dates=list(dates[window:]),
        signals=signals,
        zscores=zscores,
        equity_curve=portfolio.equity_curve,
        trade_log=portfolio.trade_log,
        unrealized_pnl=portfolio.unrealized_pnl(a[-1], b[-1]),
        open_position=portfolio.position is not None,
        elapsed_ns=elapsed,
    )


@dataclass(frozen=True)
class Equivalence:
    signals_equal: bool
    max_abs_dz: float
    scalar: BacktestReport
    optimized: BacktestReport

    def ok(self, tolerance: float = 1e-9) -> bool:
        return self.signals_equal and self.max_abs_dz <= tolerance


def compare_paths(pair: PricePair, config: BacktestConfig = BacktestConfig()) -> Equivalence:
    """Run both paths on the same pair and measure how far apart they are."""
    scalar = backtest(pair, replace(config, mode=Mode.SCALAR))
    optimized = backtest(pair, replace(config, mode=Mode.OPTIMIZED))
    max_dz = 0.0
    for zs, zo in zip(scalar.zscores, optimized.zscores):
        if zs is None or zo is None:
            if zs is not zo:
                max_dz = math.inf
            continue
        max_dz = max(max_dz, abs(zs - zo))
    return Equivalence(scalar.signals == optimized.signals, max_dz, scalar, optimized)
