"""Disruptor-versus-queue latency benchmark.

Each repetition builds a fresh structure, then times (monotonic ns clock)
from consumer-thread start through publishing ``num_events`` payloads
``"Event <i>"``, shutdown and join.  Construction is outside the timed
region.  After the clock stops the consumer's received payloads are
compared with the expected sequence; a repetition whose payloads were lost,
duplicated or reordered is kept in the raw samples with
``checksum_ok=False`` and excluded from every statistic.
"""

from __future__ import annotations

import os
import platform
import threading
import time
from dataclasses import dataclass, field, replace
from typing import Any, Optional, Sequence

from ..disruptor import Disruptor, WaitStrategy
from .queue_baseline import MutexQueueBaseline
from .stats import SummaryStats, TTestResult, ZeroVariance, summarize, two_sample_t_test

__all__ = [
    "MAX_CAPACITY",
    "BenchConfig",
    "BenchReport",
    "CorruptRun",
    "Environment",
    "Sample",
    "ScenarioRun",
    "SizeComparison",
    "compare",
    "disruptor_capacity",
    "run_disruptor_bench",
    "run_queue_bench",
    "speedup_pct",
    "sweep",
]

MAX_CAPACITY = 65536
DISRUPTOR = "disruptor"
QUEUE = "queue"


class CorruptRun(RuntimeError):
    pass


@dataclass(frozen=True)
class BenchConfig:
    num_events: int
    repetitions: int = 20
    wait_strategy: WaitStrategy = field(default_factory=WaitStrategy)
    warmup_runs: int = 3
    seed: int = 0  # no randomness yet; recorded for report provenance

    def __post_init__(self) -> None:
        if self.num_events <= 0:
            raise ValueError("num_events must be > 0")
        if self.repetitions <= 0:
            raise ValueError("repetitions must be > 0")
        if self.warmup_runs < 0:
            raise ValueError("warmup_runs must be >= 0")


def disruptor_capacity(num_events: int) -> int:
    """Smallest power of two >= min(num_events, MAX_CAPACITY)."""
    target = max(1, min(num_events, MAX_CAPACITY))
    return 1 << (target - 1).bit_length()


@dataclass(frozen=True)
class Sample:
    repetition: int
    elapsed_ns: int
    checksum_ok: bool


@dataclass(frozen=True)
class ScenarioRun:
    scenario: str
    num_events: int
    samples: tuple[Sample, ...]

    @property
    def accepted(self) -> list[int]:
        return [s.elapsed_ns for s in self.samples if s.checksum_ok]

    @property
    def corrupt(self) -> int:
        return sum(not s.checksum_ok for s in self.samples)

    def raise_if_corrupt(self) -> None:
        if self.corrupt:
            raise CorruptRun(f"{self.scenario}: {self.corrupt} of {len(self.samples)} repetitions failed the checksum")


def _expected(num_events: int) -> list[str]:
    return ["Event " + str(i) for i in range(num_events)]


def _disruptor_once(config: BenchConfig) -> tuple[int, list[Any]]:
    disruptor = Disruptor(disruptor_capacity(config.num_events), config.wait_strategy)
    received: list[Any] = []
    append = received.append

    def handler(payload: Any, sequence: int) -> None:
        append(payload)

    thread = threading.Thread(target=disruptor.processor.run, args=(handler,), name="bench-disruptor-consumer")
    on_data = disruptor.producer.on_data
    n = config.num_events
    start = time.perf_counter_ns()
    thread.start()
    for i in range(n):
        on_data("Event " + str(i))
    disruptor.stop()
    thread.join()
    return time.perf_counter_ns() - start, received


def _queue_once(config: BenchConfig) -> tuple[int, list[Any]]:
    queue = MutexQueueBaseline()
    received: list[Any] = []
    thread = threading.Thread(target=queue.run, args=(received.append,), name="bench-queue-consumer")
    push = queue.push
    n = config.num_events
    start = time.perf_counter_ns()
    thread.start()
    for i in range(n):
        push("Event " + str(i))
    queue.close()
    thread.join()
    return time.perf_counter_ns() - start, received


def _run(scenario: str, once, config: BenchConfig) -> ScenarioRun:
    expected = _expected(config.num_events)
    for _ in range(config.warmup_runs):
        once(config)
    samples = []
    for rep in range(config.repetitions):
        elapsed, received = once(config)
        samples.append(Sample(rep, elapsed, received == expected))
    return ScenarioRun(scenario, config.num_events, tuple(samples))


def run_disruptor_bench(config: BenchConfig) -> ScenarioRun:
    return _run(DISRUPTOR, _disruptor_once, config)


def run_queue_bench(config: BenchConfig) -> ScenarioRun:
    return _run(QUEUE, _queue_once, config)


def speedup_pct(baseline_mean: float, candidate_mean: float) -> float:
    return 100.0 * (baseline_mean - candidate_mean) / baseline_mean


@dataclass(frozen=True)
class SizeComparison:
    num_events: int
    capacity: int
    disruptor: ScenarioRun
    queue: ScenarioRun
    disruptor_stats: Optional[SummaryStats]
    queue_stats: Optional[SummaryStats]
    speedup_pct: Optional[float]
    t_test: Optional[TTestResult]

    @property
    def corrupt(self) -> int:
        return self.disruptor.corrupt + self.queue.corrupt


def _summary(run: ScenarioRun) -> Optional[SummaryStats]:
    accepted = run.accepted
    return summarize(accepted) if len(accepted) >= 2 else None


def compare(config: BenchConfig, phases: Optional[list[dict[str, Any]]] = None) -> SizeComparison:
    """Queue run then Disruptor run at one size; Welch test of queue against disruptor."""

    def mark(name: str) -> None:
        if phases is not None:
            phases.append({"phase": name, "num_events": config.num_events, "t_ns": time.monotonic_ns()})

    mark("queue:start")
    queue = run_queue_bench(config)
    mark("queue:end")
    mark("disruptor:start")
    disruptor = run_disruptor_bench(config)
    mark("disruptor:end")
    d_stats = _summary(disruptor)
    q_stats = _summary(queue)
    speedup = t_test = None
    if d_stats is not None and q_stats is not None:
        speedup = speedup_pct(q_stats.mean, d_stats.mean)
        try:
            t_test = two_sample_t_test(queue.accepted, disruptor.accepted)
        except ZeroVariance:
            t_test = None
    return SizeComparison(
        config.num_events,
        disruptor_capacity(config.num_events),
        disruptor,
        queue,
        d_stats,
        q_stats,
        speedup,
        t_test,
    )


def _timer_resolution_ns(trials: int = 1000) -> int:
    """Smallest non-zero step seen between consecutive clock reads."""
    best = None
    clock = time.perf_counter_ns
    for _ in range(trials):
        a = clock()
        b = clock()
        while b == a:
            b = clock()
        step = b - a
        if best is None or step < best:
            best = step
    return int(best)


def _cpu_model() -> str:
    try:
        with open("/proc/cpuinfo", encoding="utf-8") as fh:
            for line in fh:
                if line.lower().startswith("model name"):
                    return line.split(":", 1)[1].strip()
    except OSError:
        pass
    return platform.processor() or platform.machine() or "unknown"


@dataclass(frozen=True)
class Environment:
    timer: str
    timer_resolution_ns: int
    timer_reported_resolution_s: float
    cpu: str
    cpu_count: Optional[int]
    python: str
    platform: str
    pid: int

    @classmethod
    def capture(cls) -> "Environment":
        info = time.get_clock_info("perf_counter")
        return cls(
            timer=info.implementation,
            timer_resolution_ns=_timer_resolution_ns(),
            timer_reported_resolution_s=info.resolution,
            cpu=_cpu_model(),
            cpu_count=os.cpu_count(),
            python=platform.python_version(),
            platform=platform.platform(),
            pid=os.getpid(),
        )

    def to_dict(self) -> dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class BenchReport:
    wait_strategy: str
    repetitions: int
    warmup_runs: int
    comparisons: list[SizeComparison]
    environment: Environment
    phases: list[dict[str, Any]] = field(default_factory=list)

    CSV_COLUMNS = ("scenario", "num_events", "repetition", "elapsed_ns", "checksum_ok")

    @property
    def mean_speedup_pct(self) -> Optional[float]:
        values = [c.speedup_pct for c in self.comparisons if c.speedup_pct is not None]
        return sum(values) / len(values) if values else None

    @property
    def corrupt(self) -> int:
        return sum(c.corrupt for c in self.comparisons)

    def to_dict(self) -> dict[str, Any]:
        sizes = []
        for c in self.comparisons:
            sizes.append(
                {
                    "num_events": c.num_events,
                    "disruptor_capacity": c.capacity,
                    "capacity_capped": c.capacity < c.num_events,
                    "queue": None if c.queue_stats is None else c.queue_stats.to_dict(),
                    "disruptor": None if c.disruptor_stats is None else c.disruptor_stats.to_dict(),
                    "speedup_pct": c.speedup_pct,
                    "t_test": None if c.t_test is None else c.t_test.to_dict(),
                    "corrupt_runs": {QUEUE: c.queue.corrupt, DISRUPTOR: c.disruptor.corrupt},
                }
            )
        return {
            "benchmark": "disruptor_vs_queue",
            "wait_strategy": self.wait_strategy,
            "repetitions": self.repetitions,
            "warmup_runs": self.warmup_runs,
            "sizes": sizes,
            "mean_speedup_pct": self.mean_speedup_pct,
            "environment": self.environment.to_dict(),
            "phases": self.phases,
            "samples": [dict(zip(self.CSV_COLUMNS, row)) for row in self.csv_rows()],
        }

    def csv_rows(self) -> list[tuple[Any, ...]]:
        rows = []
        for c in self.comparisons:
            for run in (c.queue, c.disruptor):
                for s in run.samples:
                    rows.append((run.scenario, run.num_events, s.repetition, s.elapsed_ns, s.checksum_ok))
        return rows

    def to_text(self) -> str:
        def fmt(x: Optional[float], pattern: str) -> str:
            return "n/a" if x is None else format(x, pattern)

        lines = [
            f"wait strategy {self.wait_strategy}, {self.repetitions} repetitions, {self.warmup_runs} warmup",
            f"timer {self.environment.timer} (step {self.environment.timer_resolution_ns} ns), cpu {self.environment.cpu}",
            "",
            f"{'events':>10}{'queue mean ns':>18}{'queue sd':>14}{'disruptor ns':>18}{'disr. sd':>14}"
            f"{'speedup %':>11}{'t':>10}{'p':>12}",
        ]
        for c in self.comparisons:
            q, d, t = c.queue_stats, c.disruptor_stats, c.t_test
            lines.append(
                f"{c.num_events:>10}{fmt(q and q.mean, '.0f'):>18}{fmt(q and q.stddev, '.0f'):>14}"
                f"{fmt(d and d.mean, '.0f'):>18}{fmt(d and d.stddev, '.0f'):>14}"
                f"{fmt(c.speedup_pct, '.2f'):>11}{fmt(t and t.t_stat, '.3f'):>10}{fmt(t and t.p_value, '.3g'):>12}"
            )
        lines.append("")
        lines.append(f"mean speedup {fmt(self.mean_speedup_pct, '.2f')} %")
        if self.corrupt:
            lines.append(f"CORRUPT RUNS: {self.corrupt}")
        return "\n".join(lines) + "\n"


def sweep(sizes: Sequence[int], base: BenchConfig) -> BenchReport:
    phases: list[dict[str, Any]] = []
    comparisons = [compare(replace(base, num_events=n), phases) for n in sizes]
    return BenchReport(
        wait_strategy=base.wait_strategy.kind.value,
        repetitions=base.repetitions,
        warmup_runs=base.warmup_runs,
        comparisons=comparisons,
        environment=Environment.capture(),
        phases=phases,
    )
