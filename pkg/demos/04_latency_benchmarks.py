# %% [markdown]
# # Disruptor versus a lock-and-condition queue
#
# Twenty timed runs per size after three warmups.  Every run's payloads are
# checked before its timing is accepted.

# %%
from latencylab.bench import BenchConfig, run_suite, sweep
from latencylab.disruptor import WaitStrategy

report = sweep([100, 1000, 10_000], BenchConfig(1, repetitions=20, wait_strategy=WaitStrategy.yielding()))
print(report.to_text())

# %% [markdown]
# Under CPython both structures serialise on the interpreter lock.  The
# Disruptor still wins at larger sizes because the consumer drains whole
# batches per wake-up instead of taking a lock per event.

# %%
for c in report.comparisons:
    t = c.t_test
    print(f"{c.num_events:>6} events: speedup {c.speedup_pct:6.1f}%  Welch t {t.t_stat:7.2f}  p {t.p_value:.2e}")

# %% [markdown]
# The micro-optimisation experiments, each with its correctness verdict.

# %%
print(run_suite("all", cache_size=1 << 20).to_text())
