import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from latencylab.pairs import NonFiniteInput, RollingStats, lane_sums
from latencylab.pairs.rolling import REFRESH_INTERVAL


def test_one_to_four():
    rs = RollingStats(4)
    out = [rs.push(v) for v in (1, 2, 3, 4)]
    assert out[:3] == [None, None, None]
    mean, sd = out[3]
    assert mean == 2.5
    assert sd == pytest.approx(1.118034, abs=1e-6)


def test_constant_window():
    rs = RollingStats(4)
    for _ in range(4):
        result = rs.push(5.0)
    assert result == (5.0, 0.0)


def test_not_full_after_three():
    rs = RollingStats(4)
    for v in (1, 2, 3):
        assert rs.push(v) is None
    assert not rs.full


def test_window_slides():
    rs = RollingStats(3)
    for v in (1, 2, 3, 10):
        out = rs.push(v)
    assert rs.values() == [2, 3, 10]
    assert out[0] == pytest.approx(5.0)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite(bad):
    with pytest.raises(NonFiniteInput):
        RollingStats(2).push(bad)


def test_bad_window():
    with pytest.raises(ValueError):
        RollingStats(0)


def test_lane_sums_tail():
    assert lane_sums([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]) == (21.0, 91.0)
    assert lane_sums([]) == (0.0, 0.0)


def test_refresh_bounds_drift():
    rs = RollingStats(16)
    rng = np.random.default_rng(0)
    for v in rng.normal(1e6, 1.0, 3 * REFRESH_INTERVAL + 7):
        rs.push(float(v))
    exact = math.fsum(rs.values())
    assert abs(rs.running_sum - exact) <= 1e-9 * abs(exact)


@given(
    window=st.integers(1, 20),
    values=st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=300),
)
def test_running_sum_matches_window(window, values):
    rs = RollingStats(window)
    for v in values:
        out = rs.push(v)
    live = rs.values()
    assert live == values[-window:]
    exact = math.fsum(live)
    scale = max(1.0, math.fsum(abs(v) for v in live))
    assert abs(rs.running_sum - exact) <= 1e-9 * scale
    if len(values) >= window:
        mean, sd = out
        assert sd >= 0
        assert mean == pytest.approx(exact / window, rel=1e-9, abs=1e-9 * scale)
