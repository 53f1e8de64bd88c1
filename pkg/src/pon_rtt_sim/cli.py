"""Command-line front end: run experiments, sweeps, oracles, and plot data.

Subcommands::

    run        simulate the configured policy, one metrics row per cycle
    sweep      aggregate metrics across a list of values for one parameter
    oracle     print the closed-form expectations for the configured policy
    plot-data  emit (waste_us, collision_rate_pct) pairs sorted by waste

Exit codes: 0 success, 2 configuration error, 3 runtime error.
Output is byte-stable for a fixed (config, seed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import analysis
from .config import ConfigError, ExperimentConfig, load_config, with_updates
from .engine import run_cycles
from .model import ticks_to_us

CSV_HEADER = ["Cycle", "ONU", "Collision Rate", "Waste of Trans Time(us)", "Line Utilization"]

_SWEEP_PARAMS = ("delta_x_us", "onus", "complement_max_us", "scheduler")


def _pct(x: float) -> str:
    return f"{100 * x:.2f}"


def _us(ticks: float) -> str:
    return f"{ticks_to_us(ticks):.2f}"


def _metric_rows(config: ExperimentConfig) -> list[dict]:
    rows = []
    for outcome, metrics in run_cycles(config):
        rows.append(
            {
                "cycle": outcome.cycle + 1,
                "onus": metrics.n,
                "collision_rate_pct": 100 * metrics.collision_rate,
                "waste_us": ticks_to_us(metrics.waste),
                "line_utilization_pct": 100 * (metrics.utilization or 0.0),
            }
        )
    if config.sort == "waste":
        rows.sort(key=lambda r: r["waste_us"])
    return rows


def _mean(rows: list[dict], key: str) -> float:
    return sum(r[key] for r in rows) / len(rows)


def cmd_run(config: ExperimentConfig, out: io.TextIOBase) -> int:
    rows = _metric_rows(config)
    mean = {
        "onus": config.onus,
        "collision_rate_pct": _mean(rows, "collision_rate_pct"),
        "waste_us": _mean(rows, "waste_us"),
        "line_utilization_pct": _mean(rows, "line_utilization_pct"),
    }
    if config.output == "json":
        payload = {
            "rows": [
                {
                    "cycle": r["cycle"],
                    "onus": r["onus"],
                    "collision_rate_pct": f"{r['collision_rate_pct']:.2f}",
                    "waste_us": f"{r['waste_us']:.2f}",
                    "line_utilization_pct": f"{r['line_utilization_pct']:.2f}",
                }
                for r in rows
            ],
            "mean": {
                "collision_rate_pct": f"{mean['collision_rate_pct']:.2f}",
                "waste_us": f"{mean['waste_us']:.2f}",
                "line_utilization_pct": f"{mean['line_utilization_pct']:.2f}",
            },
        }
        out.write(json.dumps(payload, indent=2) + "\n")
        return 0
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [r["cycle"], r["onus"], f"{r['collision_rate_pct']:.2f}",
             f"{r['waste_us']:.2f}", f"{r['line_utilization_pct']:.2f}"]
        )
    writer.writerow(
        ["avg", config.onus, f"{mean['collision_rate_pct']:.2f}",
         f"{mean['waste_us']:.2f}", f"{mean['line_utilization_pct']:.2f}"]
    )
    return 0


def _parse_sweep_value(param: str, raw: str):
    if param == "onus":
        return int(raw)
    if param == "scheduler":
        return raw
    return float(raw)


def cmd_sweep(config: ExperimentConfig, param: str, values: Sequence[str], out: io.TextIOBase) -> int:
    if param not in _SWEEP_PARAMS:
        raise ConfigError(f"sweep parameter must be one of {'|'.join(_SWEEP_PARAMS)}")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [param, "collision_rate_pct_mean", "collision_rate_pct_se",
         "waste_us_mean", "waste_us_se",
         "line_utilization_pct_mean", "line_utilization_pct_se"]
    )
    for raw in values:
        value = _parse_sweep_value(param, raw)
        point = with_updates(config, **{param: value})
        summary = analysis.monte_carlo_summary(point)
        writer.writerow(
            [raw,
             _pct(summary.collision_rate.mean), _pct(summary.collision_rate.se),
             _us(summary.waste.mean), _us(summary.waste.se),
             _pct(summary.utilization.mean), _pct(summary.utilization.se)]
        )
    return 0


def cmd_oracle(config: ExperimentConfig, out: io.TextIOBase) -> int:
    rate, waste, util = analysis.predicted_metrics(config)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["scheduler", "collision_rate_pct", "expected_waste_us", "predicted_utilization_pct"])
    writer.writerow([config.scheduler, _pct(rate), _us(waste), _pct(util)])
    return 0


def cmd_plot_data(config: ExperimentConfig, out: io.TextIOBase) -> int:
    rows = _metric_rows(config)
    rows.sort(key=lambda r: r["waste_us"])
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["waste_us", "collision_rate_pct"])
    for r in rows:
        writer.writerow([f"{r['waste_us']:.2f}", f"{r['collision_rate_pct']:.2f}"])
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pon-rtt-sim",
        description="Simulate PON upstream grant scheduling under RTT estimation error.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value config file")
    common.add_argument("--onus", type=int)
    common.add_argument("--cycles", type=int)
    common.add_argument("--delta-x-us", type=float, dest="delta_x_us")
    common.add_argument("--scheduler", choices=("ideal", "baseline", "complement"))
    common.add_argument("--complement-mode", choices=("uniform", "constant"), dest="complement_mode")
    common.add_argument("--complement-max-us", type=float, dest="complement_max_us")
    common.add_argument("--complement-value-us", type=float, dest="complement_value_us")
    common.add_argument("--guard-time-us", type=float, dest="guard_time_us")
    common.add_argument("--seed", type=int)
    common.add_argument("--output", choices=("csv", "json"))
    common.add_argument("--sort", choices=("cycle", "waste"))
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument("--dump-config", action="store_true",
                        help="print the resolved config and exit")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="simulate and emit per-cycle metrics")
    sweep = sub.add_parser("sweep", parents=[common], help="aggregate metrics over parameter values")
    sweep.add_argument("--param", required=True, choices=_SWEEP_PARAMS)
    sweep.add_argument("--values", required=True, help="comma-separated values")
    sub.add_parser("oracle", parents=[common], help="closed-form expectations")
    sub.add_parser("plot-data", parents=[common], help="waste vs collision-rate series")
    return parser


_OVERRIDE_KEYS = (
    "onus", "cycles", "delta_x_us", "scheduler", "complement_mode",
    "complement_max_us", "complement_value_us", "guard_time_us",
    "seed", "output", "sort",
)


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    overrides = {
        k: getattr(args, k) for k in _OVERRIDE_KEYS if getattr(args, k, None) is not None
    }
    return load_config(args.config, overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        sink = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
        try:
            if args.dump_config:
                sink.write(config.dump())
                return 0
            if args.command == "run":
                return cmd_run(config, sink)
            if args.command == "sweep":
                return cmd_sweep(config, args.param, args.values.split(","), sink)
            if args.command == "oracle":
                return cmd_oracle(config, sink)
            return cmd_plot_data(config, sink)
        finally:
            if args.out:
                sink.close()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # engine/runtime failures
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
