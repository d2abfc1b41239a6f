import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latencylab.econometrics import gen_cointegrated_pair
from latencylab.pairs import (
    BacktestConfig,
    Mode,
    Signal,
    WindowNotMultipleOfFour,
    WindowTooLarge,
    backtest,
    compare_paths,
    pair_from_arrays,
)
from latencylab.pairs.backtest import optimized_zscores, scalar_zscores


def synthetic(seed=0, n=1260, base=500.0):
    y, x = gen_cointegrated_pair(1.0, 0.5, n, seed)
    return pair_from_arrays(y + base, x + base)


def test_paths_agree_on_1260_bars():
    eq = compare_paths(synthetic(1), BacktestConfig(window=16))
    assert eq.ok()
    assert eq.max_abs_dz <= 1e-9
    assert len(eq.scalar.zscores) == 1260 - 16


def test_window_ten_optimized():
    with pytest.raises(WindowNotMultipleOfFour):
        backtest(synthetic(), BacktestConfig(window=10, mode=Mode.OPTIMIZED))
    backtest(synthetic(), BacktestConfig(window=10, mode=Mode.SCALAR))


def test_window_too_large():
    with pytest.raises(WindowTooLarge):
        backtest(synthetic(n=16), BacktestConfig(window=16))


def test_constant_prices_all_hold():
    pair = pair_from_arrays([50.0] * 40, [50.0] * 40)
    for mode in Mode:
        r = backtest(pair, BacktestConfig(window=8, mode=mode))
        assert set(r.signals) == {Signal.HOLD}
        assert all(z is None for z in r.zscores)
        assert r.final_balance == r.initial_cash
        assert r.sharpe is None


def test_constant_nonzero_spread_all_hold():
    pair = pair_from_arrays([60.0] * 30, [50.0] * 30)
    r = backtest(pair, BacktestConfig(window=4, mode=Mode.OPTIMIZED))
    assert set(r.signals) == {Signal.HOLD}


def test_window_semantics_match_hand_computation():
    a = [10.0, 11.0, 9.0, 12.0, 15.0, 8.0]
    b = [1.0] * 6
    zs = list(scalar_zscores(tuple(a), tuple(b), 4))
    window = np.array(a[:4]) - 1.0
    expected = (a[4] - 1.0 - window.mean()) / window.std()
    assert zs[0] == pytest.approx(expected)
    assert len(zs) == 2


def test_hedge_ratio_used():
    y, x = gen_cointegrated_pair(2.0, 0.3, 300, 4)
    pair = pair_from_arrays(y + 1000, x + 1000)
    r = backtest(pair, BacktestConfig(window=16, hedge_ratio=2.0))
    a, b = pair.series_a.prices, pair.series_b.prices
    spreads = [a[j] - 2.0 * b[j] for j in range(17)]
    w = np.array(spreads[:16])
    assert r.zscores[0] == pytest.approx((spreads[16] - w.mean()) / w.std())


def test_report_lengths_and_json():
    r = backtest(synthetic(2, n=200), BacktestConfig(window=20))
    assert len(r.signals) == len(r.zscores) == len(r.equity_curve) == len(r.dates) == 180
    data = json.loads(r.to_json())
    assert data["num_trades"] == len(r.trade_log)
    assert data["bars"][0]["date"] == r.dates[0].isoformat()
    assert math.isclose(data["final_balance"], r.initial_cash + r.realized_pnl + r.unrealized_pnl, abs_tol=1e-6)
    assert "final balance" in r.to_text()


def test_open_position_reported():
    # spread jumps up at the very end: a short is opened on the last bar
    a = [100.0 + (i % 2) for i in range(20)] + [130.0]
    pair = pair_from_arrays(a, [100.0] * 21)
    r = backtest(pair, BacktestConfig(window=4))
    assert r.signals[-1] is Signal.OPEN_SHORT_SPREAD
    assert r.open_position


@settings(max_examples=40)
@given(
    seed=st.integers(0, 10_000),
    window=st.sampled_from([4, 8, 16, 32]),
    rho=st.floats(0.0, 0.95),
    scale=st.sampled_from([1.0, 100.0, 1e4]),
)
def test_paths_agree_property(seed, window, rho, scale):
    y, x = gen_cointegrated_pair(1.0, rho, 160, seed)
    pair = pair_from_arrays(scale * (y + 200.0), scale * (x + 200.0))
    eq = compare_paths(pair, BacktestConfig(window=window))
    assert eq.signals_equal
    assert eq.max_abs_dz <= 1e-9


def test_optimized_requires_multiple_of_four():
    with pytest.raises(WindowNotMultipleOfFour):
        list(optimized_zscores((1.0,) * 10, (1.0,) * 10, 6))
