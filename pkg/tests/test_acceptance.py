"""Acceptance gate.  Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line."""

import math
import time

import pytest

from latencylab.bench import (
    BenchConfig,
    compare,
    micro_atomic_vs_mutex,
    micro_cache_pattern,
    micro_loop_unrolling,
    micro_short_circuit,
    paired_t_test,
    run_disruptor_bench,
    student_t_cdf,
    student_t_two_sided_p,
)
from latencylab.bench.micro import TraversalOrder
from latencylab.disruptor import WaitStrategy
from latencylab.econometrics import Ar1Config, engle_granger, exposure_elasticity, gen_ar1, gen_cointegrated_pair
from latencylab.pairs import BacktestConfig, Mode, Portfolio, Signal, backtest, compare_paths, pair_from_arrays
from latencylab.pairs.strategy import step_portfolio

# scipy.stats.t.cdf, evaluated once and frozen
T_CDF_REFERENCE = [
    (-40.0, 1, 0.007956089912025812),
    (-6.5, 2, 0.011430081798161244),
    (-3.0, 3, 0.028834442811218657),
    (-2.5, 4.5, 0.02995284325110027),
    (-2.0, 5, 0.05096973941492914),
    (-1.5, 7, 0.08864924349498501),
    (-1.0, 10, 0.17044656615103004),
    (-0.5, 15, 0.3121650567600378),
    (-0.1, 20, 0.46066997067280696),
    (0.0, 1, 0.5),
    (0.0, 25, 0.5),
    (0.3, 30, 0.6168769473578236),
    (0.8, 2.5, 0.7536629950736384),
    (1.2, 8, 0.8677664473990919),
    (1.7, 12, 0.9425600673023954),
    (2.2, 19, 0.9798094491769129),
    (2.9, 40, 0.9969824364060152),
    (3.4641016151377544, 2, 0.9629100498862757),
    (5.0, 100, 0.9999987749132933),
    (12.0, 1000, 1.0),
]


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def _synthetic_pair(seed: int, n: int = 1260, gamma: float = 1.0, rho: float = 0.5, base: float = 500.0):
    y, x = gen_cointegrated_pair(gamma, rho, n, seed)
    return pair_from_arrays(y + base, x + base)


def test_1_disruptor_correctness(report):
    start = time.perf_counter()
    corrupt = []
    runs = 0
    for wait in ("spin", "yield", "sleep"):
        for n in (1, 10, 1000, 100_000):
            run = run_disruptor_bench(BenchConfig(n, 20, WaitStrategy.from_name(wait), warmup_runs=0))
            runs += len(run.samples)
            if run.corrupt or len(run.samples) != 20:
                corrupt.append((wait, n, run.corrupt))
    elapsed = time.perf_counter() - start
    ok = not corrupt and elapsed < 120.0
    report(1, ok, f"{runs} repetitions, corrupt={corrupt or 0}, {elapsed:.1f} s (budget 120 s)")


@pytest.mark.parametrize("n", [10_000, 100_000])
def test_2_disruptor_faster_than_queue(report, n):
    c = compare(BenchConfig(n, repetitions=20, wait_strategy=WaitStrategy.yielding()))
    t = c.t_test
    ok = (
        c.corrupt == 0
        and t is not None
        and c.disruptor_stats.mean < c.queue_stats.mean
        and t.p_value < 0.01
        and c.speedup_pct >= 10.0
    )
    detail = (
        f"n={n}: queue {c.queue_stats.mean:.0f} ns, disruptor {c.disruptor_stats.mean:.0f} ns, "
        f"speedup {c.speedup_pct:.1f}% (>=10), Welch t={t.t_stat:.2f} p={t.p_value:.2e} (<0.01)"
    )
    report(2, ok, detail)


def test_3_backtest_path_equivalence(report):
    eq = compare_paths(_synthetic_pair(seed=7), BacktestConfig(window=16))
    ok = eq.signals_equal and eq.max_abs_dz <= 1e-9 and len(eq.scalar.signals) == 1260 - 16
    faster = eq.optimized.elapsed_ns <= eq.scalar.elapsed_ns
    report(
        3,
        ok,
        f"signals equal={eq.signals_equal}, max|dz|={eq.max_abs_dz:.2e} (<=1e-9); "
        f"informational: scalar {eq.scalar.elapsed_ns} ns, optimized {eq.optimized.elapsed_ns} ns, "
        f"optimized not slower={faster}",
    )


def _replay_checks(pair, config: BacktestConfig) -> list[str]:
    result = backtest(pair, config)
    a, b = pair.series_a.prices, pair.series_b.prices
    failures = []
    pf = Portfolio(config.initial_cash, config.shares_per_leg, config.cost_per_leg)
    for k, (signal, z) in enumerate(zip(result.signals, result.zscores)):
        i = config.window + k
        if signal is Signal.CLOSE_POSITIONS and not (z is not None and abs(z) < config.thresholds.exit):
            failures.append(f"close at bar {i} with z={z}")
        step_portfolio(pf, signal, a[i], b[i], pair.dates[i])
        pos = pf.position
        if pos is not None and not (pos.shares_a == -pos.shares_b and abs(pos.shares_a) == config.shares_per_leg):
            failures.append(f"unbalanced legs at bar {i}: {pos.shares_a}/{pos.shares_b}")
        identity = config.initial_cash + pf.realized_pnl + pf.unrealized_pnl(a[i], b[i])
        if abs(pf.equity_curve[-1] - identity) > 1e-6:
            failures.append(f"conservation broken at bar {i}: {pf.equity_curve[-1]} vs {identity}")
    if pf.equity_curve != result.equity_curve:
        failures.append("replayed equity curve differs from the report")
    if abs(result.final_balance - (config.initial_cash + result.realized_pnl + result.unrealized_pnl)) > 1e-6:
        failures.append("final balance identity broken")
    return failures


def test_4_portfolio_property_gates(report):
    failures = []
    trades = 0
    cases = 0
    for seed in range(12):
        for gamma, shares, cost, window in ((1.0, 1, 0.0, 16), (1.0, 100, 0.5, 20), (1.0, 7, 0.0, 8)):
            pair = _synthetic_pair(seed, n=700, gamma=gamma)
            config = BacktestConfig(window=window, shares_per_leg=shares, cost_per_leg=cost, mode=Mode.OPTIMIZED if window % 4 == 0 else Mode.SCALAR)
            failures += _replay_checks(pair, config)
            trades += len(backtest(pair, config).trade_log)
            cases += 1
    report(4, not failures, f"{cases} backtests, {trades} round trips, violations={failures[:3] or 0}")


def test_5_cointegration_ensemble(report):
    start = time.perf_counter()
    coint_rejects = sum(engle_granger(*gen_cointegrated_pair(1.0, 0.5, 1250, seed)).reject_at_5pct for seed in range(100))
    walk_rejects = 0
    for seed in range(100):
        a = gen_ar1(Ar1Config(1.0, 1250, seed=2 * seed + 1_000))
        b = gen_ar1(Ar1Config(1.0, 1250, seed=2 * seed + 1_001))
        walk_rejects += engle_granger(a, b).reject_at_5pct
    elapsed = time.perf_counter() - start
    ok = coint_rejects >= 90 and walk_rejects <= 10 and elapsed < 30.0
    report(5, ok, f"cointegrated rejected {coint_rejects}/100 (>=90), walks rejected {walk_rejects}/100 (<=10), {elapsed:.1f} s")


def test_6_exposure_elasticity_table(report):
    expected = {21.41: 19.27, 31.28: 28.15, 48.58: 43.72, 87.32: 78.59}
    got = {k: exposure_elasticity(k) for k in expected}
    ok = all(abs(got[k] - v) <= 0.01 for k, v in expected.items())
    report(6, ok, ", ".join(f"{k}->{got[k]:.3f}" for k in expected))


def test_7_statistics_engine(report):
    r = paired_t_test([2, 4, 6], [1, 2, 3])
    rev = paired_t_test([1, 2, 3], [2, 4, 6])
    p0 = student_t_two_sided_p(0.0, 7.0)
    cdf_err = max(abs(student_t_cdf(t, df) - ref) for t, df, ref in T_CDF_REFERENCE)
    ok = (
        abs(r.t_stat - 3.4641) <= 1e-4
        and r.degrees_of_freedom == 2
        and rev.t_stat == -r.t_stat
        and abs(p0 - 1.0) <= 1e-12
        and cdf_err <= 1e-9
    )
    report(7, ok, f"t={r.t_stat:.6f} df={r.degrees_of_freedom:g}, antisymmetric={rev.t_stat == -r.t_stat}, p(0)={p0!r}, max CDF err={cdf_err:.1e}")


def test_8_microbench_correctness(report):
    unrolled = micro_loop_unrolling(1000)
    counters = {k: micro_atomic_vs_mutex(k, 10_000) for k in (1, 2, 4, 8)}
    counters_ok = all(r.atomic_final == r.mutex_final == k * 10_000 for k, r in counters.items())
    sc = micro_short_circuit(10_000, seed=1, first_true_rate=0.0)
    seq = micro_cache_pattern(1 << 16, TraversalOrder.SEQUENTIAL, seed=3)
    rnd = micro_cache_pattern(1 << 16, TraversalOrder.RANDOM, seed=3)
    ok = unrolled.unrolled_sum == unrolled.scalar_sum == 499500 and counters_ok and sc.short_evals == 0 and seq.checksum == rnd.checksum
    report(
        8,
        ok,
        f"unrolled sum {unrolled.unrolled_sum}, counters ok={counters_ok}, short evals={sc.short_evals}, "
        f"cache checksums {seq.checksum}=={rnd.checksum}; informational: seq {seq.elapsed_ns} ns vs random {rnd.elapsed_ns} ns",
    )
