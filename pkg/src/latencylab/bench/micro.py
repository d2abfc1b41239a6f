"""Micro-optimisation experiments.

Each experiment times two variants of the same computation and also
returns the values needed to check that both variants agree.  Timings are
informational; only the correctness fields are meant to be asserted.
"""

from __future__ import annotations

import enum
import itertools
import random
import threading
import time
from dataclasses import asdict, dataclass
from typing import Any, Callable

import numpy as np

__all__ = [
    "SUITES",
    "AtomicResult",
    "BranchResult",
    "CacheResult",
    "MicroEntry",
    "MicroReport",
    "MixedPrecisionResult",
    "ShortCircuitResult",
    "TraversalOrder",
    "UnrollPreconditionError",
    "UnrollResult",
    "micro_atomic_vs_mutex",
    "micro_branch_reduction",
    "micro_cache_pattern",
    "micro_loop_unrolling",
    "micro_mixed_precision",
    "micro_short_circuit",
    "run_suite",
]

_clock = time.perf_counter_ns


class TraversalOrder(enum.Enum):
    SEQUENTIAL = "sequential"
    RANDOM = "random"


@dataclass(frozen=True)
class CacheResult:
    order: TraversalOrder
    size: int
    elapsed_ns: int
    checksum: int


def micro_cache_pattern(size: int, order: TraversalOrder, seed: int = 0) -> CacheResult:
    """Sum a seeded int64 array by walking an index array in the given order.

    The data and the permutation both come from ``seed``, so two calls that
    differ only in ``order`` sum identical values.
    """
    if size < 0:
        raise ValueError("size must be >= 0")
    rng = np.random.default_rng(seed)
    data = rng.integers(0, 1 << 20, size=size, dtype=np.int64)
    perm = rng.permutation(size)
    index = np.arange(size) if order is TraversalOrder.SEQUENTIAL else perm
    start = _clock()
    checksum = int(data[index].sum())
    return CacheResult(order, size, _clock() - start, checksum)


class UnrollPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class UnrollResult:
    n: int
    scalar_ns: int
    unrolled_ns: int
    scalar_sum: int
    unrolled_sum: int


def micro_loop_unrolling(n: int) -> UnrollResult:
    if n < 0 or n % 4:
        raise UnrollPreconditionError(f"n must be a non-negative multiple of 4, got {n}")
    start = _clock()
    scalar = 0
    for i in range(n):
        scalar += i
    mid = _clock()
    unrolled = 0
    for i in range(0, n, 4):
        unrolled += i + (i + 1) + (i + 2) + (i + 3)
    end = _clock()
    return UnrollResult(n, mid - start, end - mid, scalar, unrolled)


@dataclass(frozen=True)
class ShortCircuitResult:
    iterations: int
    eager_ns: int
    short_ns: int
    eager_evals: int
    short_evals: int
    eager_hits: int
    short_hits: int


def micro_short_circuit(iterations: int, seed: int = 0, first_true_rate: float = 0.5) -> ShortCircuitResult:
    """Two-term conjunctions with an instrumented, deliberately costly second term."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    if not 0.0 <= first_true_rate <= 1.0:
        raise ValueError("first_true_rate must lie in [0, 1]")
    rng = random.Random(seed)
    firsts = [rng.random() < first_true_rate for _ in range(iterations)]
    values = [rng.random() for _ in range(iterations)]
    evals = [0]

    def expensive(v: float) -> bool:
        evals[0] += 1
        acc = v
        for _ in range(8):
            acc = acc * 1.0000001 + 1e-9
        return acc > 0.5

    start = _clock()
    eager_hits = 0
    for f, v in zip(firsts, values):
        s = expensive(v)
        if f & s:
            eager_hits += 1
    mid = _clock()
    eager_evals = evals[0]
    evals[0] = 0
    short_hits = 0
    for f, v in zip(firsts, values):
        if f and expensive(v):
            short_hits += 1
    end = _clock()
    return ShortCircuitResult(iterations, mid - start, end - mid, eager_evals, evals[0], eager_hits, short_hits)


ERROR_A, ERROR_B, ERROR_C = 1, 2, 4


@dataclass(frozen=True)
class BranchResult:
    iterations: int
    branched_ns: int
    flagged_ns: int
    branched_tally: tuple[int, int, int, int]  # hot, A, B, C
    flagged_tally: tuple[int, int, int, int]

    @property
    def results_equal(self) -> bool:
        return self.branched_tally == self.flagged_tally


def micro_branch_reduction(iterations: int, seed: int = 0, error_rate: float = 0.05) -> BranchResult:
    """Error dispatch via three separate tests against one combined flag word.

    Precedence is A, then B, then C.  The flag word is built while the
    checks run, as a real hot path would do, so both variants pay for
    evaluating the conditions.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    rng = random.Random(seed)
    rows = [(rng.random() < error_rate, rng.random() < error_rate, rng.random() < error_rate) for _ in range(iterations)]

    start = _clock()
    hot = a_count = b_count = c_count = 0
    for a, b, c in rows:
        if a:
            a_count += 1
        elif b:
            b_count += 1
        elif c:
            c_count += 1
        else:
            hot += 1
    mid = _clock()
    branched = (hot, a_count, b_count, c_count)

    hot = a_count = b_count = c_count = 0
    for a, b, c in rows:
        flags = a | (b << 1) | (c << 2)
        if not flags:
            hot += 1
        elif flags & ERROR_A:
            a_count += 1
        elif flags & ERROR_B:
            b_count += 1
        else:
            c_count += 1
    end = _clock()
    return BranchResult(iterations, mid - start, end - mid, branched, (hot, a_count, b_count, c_count))


@dataclass(frozen=True)
class AtomicResult:
    threads: int
    increments: int
    atomic_ns: int
    mutex_ns: int
    atomic_final: int
    mutex_final: int

    @property
    def expected(self) -> int:
        return self.threads * self.increments


def _run_threads(threads: int, target: Callable[[], None]) -> int:
    workers = [threading.Thread(target=target) for _ in range(threads)]
    start = _clock()
    for w in workers:
        w.start()
    for w in workers:
        w.join()
    return _clock() - start


def micro_atomic_vs_mutex(threads: int, increments: int) -> AtomicResult:
    """Shared counter via an indivisible increment against a lock-protected int.

    ``next()`` on an ``itertools.count`` is a single C-level operation and
    cannot be interrupted by another thread, so it plays the atomic role.
    """
    if threads < 0 or increments < 0:
        raise ValueError("threads and increments must be >= 0")
    counter = itertools.count()

    def atomic_worker() -> None:
        step = counter.__next__
        for _ in range(increments):
            step()

    atomic_ns = _run_threads(threads, atomic_worker)
    atomic_final = next(counter)

    lock = threading.Lock()
    box = [0]

    def mutex_worker() -> None:
        for _ in range(increments):
            with lock:
                box[0] += 1

    mutex_ns = _run_threads(threads, mutex_worker)
    return AtomicResult(threads, increments, atomic_ns, mutex_ns, atomic_final, box[0])


@dataclass(frozen=True)
class MixedPrecisionResult:
    iterations: int
    mixed_ns: int
    unmixed_ns: int
    max_abs_diff: float


MIXED_CONSTANT = 1.23


def micro_mixed_precision(iterations: int, seed: int = 0, fill: float | None = None) -> MixedPrecisionResult:
    """Scale single-precision values by a double constant or by a single constant.

    The mixed variant promotes to double, multiplies, and rounds back to
    single; the unmixed variant stays in single precision throughout.
    ``fill`` replaces the seeded inputs with a constant.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    if fill is None:
        values = np.random.default_rng(seed).uniform(-1000.0, 1000.0, iterations).astype(np.float32)
    else:
        values = np.full(iterations, fill, dtype=np.float32)
    double_k = np.float64(MIXED_CONSTANT)
    single_k = np.float32(MIXED_CONSTANT)
    start = _clock()
    mixed = (values * double_k).astype(np.float32)
    mid = _clock()
    unmixed = values * single_k
    end = _clock()
    diff = float(np.max(np.abs(mixed.astype(np.float64) - unmixed.astype(np.float64)))) if iterations else 0.0
    return MixedPrecisionResult(iterations, mid - start, end - mid, diff)


@dataclass(frozen=True)
class MicroEntry:
    technique: str
    ok: bool
    result: Any
    timings: dict[str, int]

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self.result)
        for key, value in data.items():
            if isinstance(value, enum.Enum):
                data[key] = value.value
            elif isinstance(value, tuple):
                data[key] = list(value)
        return {"technique": self.technique, "ok": self.ok, "timings_ns": self.timings, "result": data}


SUITES = ("cache", "unroll", "shortcircuit", "branch", "atomic", "precision")


@dataclass
class MicroReport:
    entries: list[MicroEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_dict(self) -> dict[str, Any]:
        return {"benchmark": "micro", "ok": self.ok, "entries": [e.to_dict() for e in self.entries]}

    CSV_COLUMNS = ("technique", "metric", "value", "ok")

    def csv_rows(self) -> list[tuple[Any, ...]]:
        return [(e.technique, k, v, e.ok) for e in self.entries for k, v in e.timings.items()]

    def to_text(self) -> str:
        lines = [f"{'technique':<22}{'verdict':<8}timings (ns)"]
        for e in self.entries:
            timings = ", ".join(f"{k}={v}" for k, v in e.timings.items())
            lines.append(f"{e.technique:<22}{'ok' if e.ok else 'FAIL':<8}{timings}")
        return "\n".join(lines) + "\n"


def run_suite(suite: str = "all", seed: int = 0, cache_size: int = 1 << 22) -> MicroReport:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    chosen = SUITES if suite == "all" else (suite,)
    entries = []
    if "cache" in chosen:
        seq = micro_cache_pattern(cache_size, TraversalOrder.SEQUENTIAL, seed)
        rnd = micro_cache_pattern(cache_size, TraversalOrder.RANDOM, seed)
        entries.append(
            MicroEntry(
                f"cache[{cache_size}]",
                seq.checksum == rnd.checksum,
                rnd,
                {"sequential_ns": seq.elapsed_ns, "random_ns": rnd.elapsed_ns},
            )
        )
    if "unroll" in chosen:
        n = 1_000_000
        r = micro_loop_unrolling(n)
        ok = r.scalar_sum == r.unrolled_sum == n * (n - 1) // 2
        entries.append(MicroEntry("loop_unrolling", ok, r, {"scalar_ns": r.scalar_ns, "unrolled_ns": r.unrolled_ns}))
    if "shortcircuit" in chosen:
        r = micro_short_circuit(200_000, seed)
        ok = r.eager_hits == r.short_hits and r.short_evals <= r.eager_evals == r.iterations
        entries.append(MicroEntry("short_circuit", ok, r, {"eager_ns": r.eager_ns, "short_ns": r.short_ns}))
    if "branch" in chosen:
        r = micro_branch_reduction(500_000, seed)
        entries.append(
            MicroEntry("branch_reduction", r.results_equal, r, {"branched_ns": r.branched_ns, "flagged_ns": r.flagged_ns})
        )
    if "atomic" in chosen:
        for threads in (1, 2, 4, 8):
            r = micro_atomic_vs_mutex(threads, 20_000)
            ok = r.atomic_final == r.mutex_final == r.expected
            entries.append(
                MicroEntry(f"atomic_vs_mutex[{threads}]", ok, r, {"atomic_ns": r.atomic_ns, "mutex_ns": r.mutex_ns})
            )
    if "precision" in chosen:
        r = micro_mixed_precision(1_000_000, seed)
        entries.append(
            MicroEntry("mixed_precision", bool(np.isfinite(r.max_abs_diff)), r, {"mixed_ns": r.mixed_ns, "unmixed_ns": r.unmixed_ns})
        )
    return MicroReport(entries)
