"""Live cross-checks against statsmodels; skipped when it is not installed."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latencylab.econometrics import Ar1Config, adf_test, engle_granger, gen_ar1, gen_cointegrated_pair, schwert_maxlag

statsmodels = pytest.importorskip("statsmodels.tsa.stattools", reason="statsmodels oracle not installed")


@settings(max_examples=25)
@given(
    seed=st.integers(0, 10_000),
    n=st.integers(20, 400),
    rho=st.sampled_from([0.0, 0.5, 0.9, 1.0]),
    trend=st.sampled_from(["c", "n"]),
)
def test_adf_matches_statsmodels(seed, n, rho, trend):
    x = gen_ar1(Ar1Config(rho, n, seed=seed))
    ours = adf_test(x, trend=trend)
    ntrend = 1 if trend == "c" else 0
    maxlag = min(schwert_maxlag(n), n // 2 - ntrend - 1)
    ref = statsmodels.adfuller(x, maxlag=maxlag, regression=trend, autolag="AIC")
    assert ours.lags_used == ref[2]
    assert ours.nobs == ref[3]
    assert ours.t_stat == pytest.approx(ref[0], rel=1e-8, abs=1e-8)
    assert ours.critical_values["5%"] == pytest.approx(ref[4]["5%"], abs=1e-9)


@settings(max_examples=15)
@given(seed=st.integers(0, 10_000), n=st.integers(30, 600), gamma=st.floats(0.5, 3.0))
def test_engle_granger_matches_statsmodels(seed, n, gamma):
    y, x = gen_cointegrated_pair(gamma, 0.6, n, seed)
    ours = engle_granger(y, x)
    maxlag = min(schwert_maxlag(n), n // 2 - 1)
    t, _, crit = statsmodels.coint(y, x, trend="c", maxlag=maxlag, autolag="aic")
    assert ours.t_stat == pytest.approx(t, rel=1e-8, abs=1e-8)
    assert [ours.critical_values[k] for k in ("1%", "5%", "10%")] == pytest.approx(list(crit), abs=1e-8)
