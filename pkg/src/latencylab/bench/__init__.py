from .micro import (
    SUITES,
    MicroReport,
    TraversalOrder,
    UnrollPreconditionError,
    micro_atomic_vs_mutex,
    micro_branch_reduction,
    micro_cache_pattern,
    micro_loop_unrolling,
    micro_mixed_precision,
    micro_short_circuit,
    run_suite,
)
from .queue_baseline import MutexQueueBaseline, QueueClosed
from .report import ReportFormat, emit_report, render
from .runner import (
    MAX_CAPACITY,
    BenchConfig,
    BenchReport,
    CorruptRun,
    Environment,
    ScenarioRun,
    SizeComparison,
    compare,
    disruptor_capacity,
    run_disruptor_bench,
    run_queue_bench,
    speedup_pct,
    sweep,
)
from .stats import (
    LengthMismatch,
    SummaryStats,
    TooFewSamples,
    TTestKind,
    TTestResult,
    ZeroVariance,
    paired_t_test,
    regularized_incomplete_beta,
    student_t_cdf,
    student_t_two_sided_p,
    summarize,
    two_sample_t_test,
)

__all__ = [
    "MAX_CAPACITY",
    "SUITES",
    "BenchConfig",
    "BenchReport",
    "CorruptRun",
    "Environment",
    "LengthMismatch",
    "MicroReport",
    "MutexQueueBaseline",
    "QueueClosed",
    "ReportFormat",
    "ScenarioRun",
    "SizeComparison",
    "SummaryStats",
    "TTestKind",
    "TTestResult",
    "TooFewSamples",
    "TraversalOrder",
    "UnrollPreconditionError",
    "ZeroVariance",
    "compare",
    "disruptor_capacity",
    "emit_report",
    "micro_atomic_vs_mutex",
    "micro_branch_reduction",
    "micro_cache_pattern",
    "micro_loop_unrolling",
    "micro_mixed_precision",
    "micro_short_circuit",
    "paired_t_test",
    "regularized_incomplete_beta",
    "render",
    "run_disruptor_bench",
    "run_queue_bench",
    "run_suite",
    "speedup_pct",
    "student_t_cdf",
    "student_t_two_sided_p",
    "summarize",
    "sweep",
    "two_sample_t_test",
]
