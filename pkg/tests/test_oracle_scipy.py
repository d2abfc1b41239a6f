"""Live cross-checks against scipy; skipped when it is not installed."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from latencylab.bench import paired_t_test, student_t_cdf, two_sample_t_test

stats = pytest.importorskip("scipy.stats")


@given(t=st.floats(-60, 60), df=st.floats(0.5, 2000))
def test_t_cdf(t, df):
    assert student_t_cdf(t, df) == pytest.approx(float(stats.t.cdf(t, df)), abs=1e-9)


@given(seed=st.integers(0, 2**31), n=st.integers(2, 40), shift=st.floats(-3, 3))
def test_paired_and_welch(seed, n, shift):
    rng = np.random.default_rng(seed)
    a = rng.normal(0, 1, n)
    b = a + shift + rng.normal(0, 1, n)
    ours = paired_t_test(a, b)
    ref = stats.ttest_rel(a, b)
    assert ours.t_stat == pytest.approx(ref.statistic, rel=1e-9)
    assert ours.p_value == pytest.approx(ref.pvalue, abs=1e-9)
    c = rng.normal(shift, 2, n + 3)
    ours = two_sample_t_test(a, c)
    ref = stats.ttest_ind(a, c, equal_var=False)
    assert ours.t_stat == pytest.approx(ref.statistic, rel=1e-9)
    assert ours.p_value == pytest.approx(ref.pvalue, abs=1e-9)
