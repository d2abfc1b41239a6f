"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error, 2 a correctness check failed
(corrupt benchmark run, failed micro-benchmark verdict, or scalar and
optimized backtests disagreeing).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from datetime import date
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .bench import BenchConfig, ReportFormat, emit_report, run_suite, sweep
from .bench.micro import SUITES
from .disruptor import WaitStrategy
from .econometrics import Ar1Config, engle_granger, gen_ar1, gen_cointegrated_pair
from .pairs import (
    BacktestConfig,
    Mode,
    PriceSeries,
    Thresholds,
    align,
    backtest,
    compare_paths,
    load_prices,
    write_prices,
)
from .pairs.data import business_days

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _size_list(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not sizes or any(n <= 0 for n in sizes):
        raise argparse.ArgumentTypeError("sweep sizes must be positive integers")
    return sizes


def build_parser() -> tuple[_Parser, dict[str, _Parser]]:
    parser = _Parser(prog="latencylab", description="Low-latency trading experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", metavar="PATH", help="JSON or key=value file with defaults for the subcommand")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    subs: dict[str, _Parser] = {}

    p = sub.add_parser("bench-disruptor", help="Disruptor vs lock+condition queue latency")
    p.add_argument("--events", type=_positive_int, default=1000)
    p.add_argument("--reps", type=_positive_int, default=20)
    p.add_argument("--warmup", type=_non_negative_int, default=3)
    p.add_argument("--wait", choices=["spin", "yield", "sleep"], default="yield")
    p.add_argument("--sweep", type=_size_list, default=None, metavar="N1,N2,...")
    p.add_argument("--format", choices=[f.value for f in ReportFormat], default="json")
    p.add_argument("--out", default=None)
    subs["bench-disruptor"] = p

    p = sub.add_parser("bench-micro", help="micro-optimisation experiments")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cache-size", type=_positive_int, default=1 << 22)
    p.add_argument("--format", choices=[f.value for f in ReportFormat], default="json")
    p.add_argument("--out", default=None)
    subs["bench-micro"] = p

    p = sub.add_parser("backtest", help="pairs-trading backtest on two price CSVs")
    p.add_argument("--a", default=None, metavar="CSV")
    p.add_argument("--b", default=None, metavar="CSV")
    p.add_argument("--window", type=_positive_int, default=16)
    p.add_argument("--mode", choices=["scalar", "optimized", "both"], default="both")
    p.add_argument("--cash", type=float, default=1_000_000.0)
    p.add_argument("--entry", type=float, default=1.0)
    p.add_argument("--exit", type=float, default=0.8)
    p.add_argument("--shares", type=_positive_int, default=1)
    p.add_argument("--cost", type=float, default=0.0, help="fixed cost per leg per trade")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out", default=None)
    subs["backtest"] = p

    p = sub.add_parser("coint", help="Engle-Granger cointegration test on two price CSVs")
    p.add_argument("--a", default=None, metavar="CSV")
    p.add_argument("--b", default=None, metavar="CSV")
    p.add_argument("--max-lags", type=_non_negative_int, default=None)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out", default=None)
    subs["coint"] = p

    p = sub.add_parser("gen", help="write seeded synthetic price CSVs")
    p.add_argument("--kind", choices=["ar1", "cointegrated"], default="cointegrated")
    p.add_argument("--n", type=_non_negative_int, default=1260)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, metavar="CSV")
    p.add_argument("--out-b", default=None, metavar="CSV", help="second leg (x) for --kind cointegrated")
    p.add_argument("--rho", type=float, default=None, help="AR(1) coefficient (ar1) or residual coefficient (cointegrated)")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--base", type=float, default=500.0, help="constant added so prices stay positive")
    p.add_argument("--start", type=date.fromisoformat, default=date(2019, 1, 2))
    subs["gen"] = p
    return parser, subs


def _load_config(path: str) -> dict[str, Any]:
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {path}: invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError(f"config {path}: top level must be an object")
        return data
    data = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"config {path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        data[key.strip()] = value.strip()
    return data


def _apply_config(sub: _Parser, config: dict[str, Any]) -> None:
    actions = {a.dest: a for a in sub._actions if a.dest != "help"}
    defaults = {}
    for raw_key, value in config.items():
        key = raw_key.replace("-", "_")
        action = actions.get(key)
        if action is None:
            raise UsageError(f"unknown config key {raw_key!r} for {sub.prog}")
        if action.type is not None and not isinstance(value, str):
            value = str(value) if not isinstance(value, list) else ",".join(map(str, value))
        if action.type is not None:
            try:
                value = action.type(value)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"config key {raw_key!r}: {exc}") from None
        if action.choices is not None and value not in action.choices:
            raise UsageError(f"config key {raw_key!r}: {value!r} not in {sorted(action.choices)}")
        defaults[key] = value
    sub.set_defaults(**defaults)


def parse_args(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError("a subcommand is required (try --help)")
    if args.config:
        _apply_config(subs[args.command], _load_config(args.config))
        args = parser.parse_args(argv)
    return args


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command}: missing required option(s) {', '.join(missing)}")


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_bench_disruptor(args: argparse.Namespace) -> int:
    sizes = args.sweep if args.sweep else [args.events]
    base = BenchConfig(sizes[0], args.reps, WaitStrategy.from_name(args.wait), args.warmup)
    report = sweep(sizes, base)
    emit_report(report, args.format, args.out)
    if report.corrupt:
        print(f"error: {report.corrupt} benchmark repetitions failed the checksum", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_bench_micro(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, seed=args.seed, cache_size=args.cache_size)
    emit_report(report, args.format, args.out)
    if not report.ok:
        failed = [e.technique for e in report.entries if not e.ok]
        print(f"error: correctness check failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _load_pair(args: argparse.Namespace):
    _need(args, "a", "b")
    return align(load_prices(args.a), load_prices(args.b))


def cmd_backtest(args: argparse.Namespace) -> int:
    pair = _load_pair(args)
    config = BacktestConfig(
        window=args.window,
        thresholds=Thresholds(args.entry, args.exit),
        initial_cash=args.cash,
        shares_per_leg=args.shares,
        cost_per_leg=args.cost,
    )
    if args.mode != "both":
        report = backtest(pair, replace(config, mode=Mode(args.mode)))
        _write(report.to_json() + "\n" if args.format == "json" else report.to_text(), args.out)
        return EXIT_OK

    eq = compare_paths(pair, config)
    s, o = eq.scalar, eq.optimized
    improvement = 100.0 * (s.elapsed_ns - o.elapsed_ns) / s.elapsed_ns if s.elapsed_ns else None
    if args.format == "json":
        payload = {
            "equivalence": {
                "ok": eq.ok(),
                "signals_equal": eq.signals_equal,
                "max_abs_dz": eq.max_abs_dz,
                "scalar_ns": s.elapsed_ns,
                "optimized_ns": o.elapsed_ns,
                "improvement_pct": improvement,
            },
            "scalar": s.to_dict(),
            "optimized": o.to_dict(),
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        imp = "n/a" if improvement is None else f"{improvement:.2f} %"
        text = (
            s.to_text()
            + "\n"
            + f"equivalence     {'ok' if eq.ok() else 'FAILED'} (signals equal: {eq.signals_equal}, max |dz| {eq.max_abs_dz:.3e})\n"
            + f"scalar time     {s.elapsed_ns} ns\n"
            + f"optimized time  {o.elapsed_ns} ns\n"
            + f"improvement     {imp}\n"
        )
    _write(text, args.out)
    if not eq.ok():
        print("error: scalar and optimized paths disagree", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_coint(args: argparse.Namespace) -> int:
    pair = _load_pair(args)
    result = engle_granger(pair.series_a.prices, pair.series_b.prices, max_lags=args.max_lags)
    if args.format == "json":
        payload = {
            "a": pair.series_a.ticker,
            "b": pair.series_b.ticker,
            "nobs": pair.n,
            "gamma": result.gamma,
            "intercept": result.intercept,
            "t_stat": result.t_stat,
            "lags_used": result.lags_used,
            "critical_values": result.critical_values,
            "reject": result.decision_at,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [
            f"{pair.series_a.ticker} on {pair.series_b.ticker}, {pair.n} observations",
            f"gamma       {result.gamma:.6f}",
            f"intercept   {result.intercept:.6f}",
            f"t-stat      {result.t_stat:.4f}",
            f"lags        {result.lags_used}",
        ]
        for level, crit in result.critical_values.items():
            verdict = "reject" if result.decision_at[level] else "accept"
            lines.append(f"{level:>4}  crit {crit:8.4f}  {verdict}")
        text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return EXIT_OK


def _prices(ticker: str, values, base: float, start: date) -> PriceSeries:
    prices = tuple(float(base + v) for v in values)
    if any(p <= 0 for p in prices):
        raise ValueError(f"generated prices for {ticker} go non-positive; raise --base (now {base})")
    return PriceSeries(ticker, tuple(business_days(start, len(prices))), prices)


def cmd_gen(args: argparse.Namespace) -> int:
    _need(args, "out")
    if args.kind == "ar1":
        rho = 0.5 if args.rho is None else args.rho
        series = gen_ar1(Ar1Config(rho, args.n, args.sigma, args.seed))
        write_prices(args.out, _prices(Path(args.out).stem, series, args.base, args.start))
        return EXIT_OK
    _need(args, "out_b")
    rho = 0.5 if args.rho is None else args.rho
    y, x = gen_cointegrated_pair(args.gamma, rho, args.n, args.seed, sigma=args.sigma)
    sa = _prices(Path(args.out).stem, y, args.base, args.start)
    sb = _prices(Path(args.out_b).stem, x, args.base, args.start)
    write_prices(args.out, sa)
    write_prices(args.out_b, sb)
    return EXIT_OK


COMMANDS = {
    "bench-disruptor": cmd_bench_disruptor,
    "bench-micro": cmd_bench_micro,
    "backtest": cmd_backtest,
    "coint": cmd_coint,
    "gen": cmd_gen,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: FileNotFound: {exc.filename or exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
