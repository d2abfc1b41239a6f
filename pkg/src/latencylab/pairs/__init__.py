"""Pairs-trading backtest engine."""

from .backtest import (
    BacktestConfig,
    BacktestReport,
    Equivalence,
    Mode,
    WindowNotMultipleOfFour,
    WindowTooLarge,
    backtest,
    compare_paths,
)
from .data import (
    DuplicateDate,
    EmptyIntersection,
    NonPositivePrice,
    ParseError,
    PricePair,
    PriceSeries,
    align,
    load_prices,
    pair_from_arrays,
    write_prices,
)
from .rolling import NonFiniteInput, RollingStats, lane_sums
from .strategy import (
    Direction,
    Portfolio,
    Position,
    Signal,
    Thresholds,
    Trade,
    ZeroStdDev,
    ZeroVariance,
    sharpe,
    sharpe_from_returns,
    signal_from_z,
    step_portfolio,
    zscore,
)

__all__ = [
    "BacktestConfig",
    "BacktestReport",
    "Direction",
    "DuplicateDate",
    "EmptyIntersection",
    "Equivalence",
    "Mode",
    "NonFiniteInput",
    "NonPositivePrice",
    "ParseError",
    "Portfolio",
    "Position",
    "PricePair",
    "PriceSeries",
    "RollingStats",
    "Signal",
    "Thresholds",
    "Trade",
    "WindowNotMultipleOfFour",
    "WindowTooLarge",
    "ZeroStdDev",
    "ZeroVariance",
    "align",
    "backtest",
    "compare_paths",
    "lane_sums",
    "load_prices",
    "pair_from_arrays",
    "sharpe",
    "sharpe_from_returns",
    "signal_from_z",
    "step_portfolio",
    "write_prices",
    "zscore",
]
