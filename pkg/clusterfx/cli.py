# clusterfx/cli.py
"""
Command-line front end.

    clusterfx analyze data.csv [--alpha A] [--transform logit|identity] [--json]
    clusterfx simulate [config] [--preset null] [--runs R] [--out DIR] [--threads K]
    clusterfx oracle-check [--n 100] [--seed 0]

Exit codes: 0 success, 1 oracle-check failure, 2 data or configuration error.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from .core.config import Transform, load_config
from .core.exceptions import BadConfig, ClusterFXError
from .inference.manager import ClusteredEffectsAnalyzer
from .inference.schemas import AnalysisReport
from .sim.config import load_simulation_config, simulation_config_from_dict
from .sim.oracle import OracleSummary, run_oracle_check
from .sim.presets import PRESETS
from .sim.runner import run_experiment, run_sweep, write_report, write_sweep
from .sim.schemas import SimulationReport
from .utils.logging import setup_logging
from .utils.serialization import dump_json
from .version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ORACLE_FAILURE = 1
EXIT_ERROR = 2

THREADS_ENV = "CLUSTERFX_THREADS"
PERIOD_NAMES = {1: "pre", 2: "post"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clusterfx",
        description="Nonparametric relative effects for partially complete clustered pre-post data",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity (default: WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="Analyze a long-format CSV dataset")
    analyze.add_argument("input", type=Path, help="CSV with columns group,cluster,period,visit,value")
    analyze.add_argument("--alpha", type=float, help="Test level and CI error rate (default 0.05)")
    analyze.add_argument("--transform", choices=[t.value for t in Transform], help="CI transform")
    analyze.add_argument("--config", type=Path, help="JSON analysis configuration")
    fmt = analyze.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="as_json", action="store_true", help="Emit the report as JSON")
    fmt.add_argument("--text", dest="as_json", action="store_false", help="Emit a text report (default)")
    analyze.add_argument("--out", type=Path, help="Write the report here instead of stdout")
    analyze.set_defaults(handler=cmd_analyze, as_json=False)

    simulate = commands.add_parser("simulate", help="Run a Monte Carlo experiment or a preset grid")
    simulate.add_argument("config", nargs="?", type=Path, help="Simulation configuration (JSON or key = value)")
    simulate.add_argument("--preset", choices=sorted(PRESETS), help="Run a standard configuration grid")
    simulate.add_argument("--runs", type=int, help="Replications per configuration")
    simulate.add_argument("--seed", type=int, help="Base seed")
    simulate.add_argument("--out", type=Path, help="Directory for the CSV and JSON reports")
    simulate.add_argument("--threads", type=int, help=f"Worker count (falls back to ${THREADS_ENV}, then 1)")
    simulate.set_defaults(handler=cmd_simulate)

    oracle = commands.add_parser("oracle-check", help="Compare fast estimators against reference implementations")
    oracle.add_argument("--n", type=int, default=100, help="Number of random datasets (default 100)")
    oracle.add_argument("--seed", type=int, default=0, help="Seed (default 0)")
    oracle.add_argument("--json", dest="as_json", action="store_true", help="Emit the summary as JSON")
    oracle.set_defaults(handler=cmd_oracle_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    try:
        return args.handler(args)
    except ClusterFXError as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


# ========== SUB-COMMANDS ==========

def cmd_analyze(args: argparse.Namespace) -> int:
    config = load_config(args.config, alpha=args.alpha, transform=args.transform)
    report = ClusteredEffectsAnalyzer(config).analyze_file(args.input)
    _emit(dump_json(report) if args.as_json else format_report(report), args.out)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.runs is not None and args.runs < 1:
        raise BadConfig("runs", f"must be at least 1, got {args.runs}")
    if args.config is not None and args.preset is not None:
        raise BadConfig("preset", "give either a configuration file or a preset, not both")
    threads = _resolve_threads(args.threads)

    if args.preset is not None:
        overrides = {k: v for k, v in (("runs", args.runs), ("seed", args.seed)) if v is not None}
        configs = PRESETS[args.preset](**overrides)
        logger.info(f"Preset {args.preset}: {len(configs)} configurations")
        frame = run_sweep(configs, threads)
        if args.out is not None:
            write_sweep(frame, args.out, stem=args.preset)
        print(format_sweep(frame))
        return EXIT_OK

    if args.config is not None:
        config = load_simulation_config(args.config, runs=args.runs, seed=args.seed)
    else:
        config = simulation_config_from_dict(
            {k: v for k, v in (("runs", args.runs), ("seed", args.seed)) if v is not None}
        )
    report = run_experiment(config, threads)
    if args.out is not None:
        stem = args.config.stem if args.config is not None else "simulation"
        write_report(report, args.out, stem=stem)
    print(format_simulation(report))
    return EXIT_OK


def cmd_oracle_check(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise BadConfig("n", f"must be at least 1, got {args.n}")
    summary = run_oracle_check(args.n, args.seed)
    print(dump_json(summary) if args.as_json else format_oracle(summary))
    return EXIT_OK if summary.passed else EXIT_ORACLE_FAILURE


# ========== TEXT RENDERING ==========

def format_report(report: AnalysisReport) -> str:
    """Plain-text report: effects with intervals, hypothesis p-values, per-group pre-post comparison"""
    level = int(round(100 * (1 - report.alpha)))
    lines = [
        f"Nonparametric relative effects: T={report.T} groups, N={report.N} observations",
        "",
        "Cell counts",
        pd.DataFrame(report.counts).to_string(index=False),
        "",
        f"Relative effects with {level}% confidence intervals ({report.transform.value})",
    ]
    rows = [
        {
            "group": c.group,
            "period": PERIOD_NAMES[c.period],
            "p_hat": _fmt(c.estimate),
            "lower": _fmt(c.lower),
            "upper": _fmt(c.upper),
        }
        for c in report.intervals.cells
    ]
    lines += [pd.DataFrame(rows).to_string(index=False), ""]

    rows = []
    for name, test in report.tests.items():
        wald = report.wald_tests.get(name)
        rows.append({
            "effect": name,
            "Q_N": _fmt(test.statistic if test else None),
            "f_hat": _fmt(test.f_hat if test else None),
            "p_value": _fmt(test.p_value if test else None),
            "wald_p": _fmt(wald.p_value if wald else None),
        })
    lines.append("Hypothesis tests (ANOVA-type; Wald-type p-values are liberal in small samples)")
    lines += [pd.DataFrame(rows).to_string(index=False) if rows else "(none)", ""]

    rows = [
        {
            "group": t.group,
            "pre": _fmt(t.pre),
            "post": _fmt(t.post),
            "diff": _fmt(t.diff),
            "p_value": _fmt(t.p_value),
        }
        for t in report.pre_post
    ]
    lines += ["Pre-post comparison by group", pd.DataFrame(rows).to_string(index=False), ""]

    decomposition = report.decomposition
    lines.append("Decomposition")
    lines.append("  intervention: " + " ".join(_fmt(a) for a in decomposition["alpha"]))
    lines.append("  time:         " + " ".join(_fmt(b) for b in decomposition["beta"]))
    lines.append("  interaction:")
    for j, row in enumerate(decomposition["alphabeta"], start=1):
        lines.append(f"    group {j}: " + " ".join(_fmt(x) for x in row))
    lines.append(f"  grand mean:   {_fmt(decomposition['grand_mean'])}")

    if report.warnings:
        lines += ["", "Warnings"]
        lines += [f"  - {w}" for w in report.warnings]
    return "\n".join(lines)


def format_simulation(report: SimulationReport) -> str:
    frame = pd.DataFrame([r.model_dump() for r in report.rates])
    lines = [
        f"{report.config.label or report.config.family.value}: {report.runs} runs, "
        f"alternative={report.config.alternative.value}, delta={report.config.delta:g}",
        frame.to_string(index=False, float_format=lambda x: f"{x:.1f}"),
    ]
    for effect, count in report.degenerate.items():
        lines.append(f"  {effect}: {count} replication(s) without estimated variability")
    return "\n".join(lines)


def format_sweep(frame: pd.DataFrame) -> str:
    columns = [c for c in frame.columns if not c.endswith("_mc_se") and c != "label"]
    return frame[columns].to_string(index=False, float_format=lambda x: f"{x:.1f}")


def format_oracle(summary: OracleSummary) -> str:
    status = "PASS" if summary.passed else "FAIL"
    return "\n".join([
        f"Oracle check over {summary.datasets} datasets (seed {summary.seed}): {status}",
        f"  max |midrank deviation|  = {summary.max_rank_deviation:.3e}  (tolerance {summary.w_tolerance:.0e})",
        f"  max |w_hat deviation|    = {summary.max_w_deviation:.3e}  (tolerance {summary.w_tolerance:.0e})",
        f"  max |V_hat deviation|    = {summary.max_v_deviation:.3e}  (tolerance {summary.v_tolerance:.0e})",
    ])


# ========== INTERNAL HELPER METHODS ==========

def _fmt(value: Optional[float]) -> str:
    return "NA" if value is None else f"{value:.4f}"


def _resolve_threads(threads: Optional[int]) -> int:
    if threads is None:
        raw = os.environ.get(THREADS_ENV)
        if not raw:
            return 1
        try:
            threads = int(raw)
        except ValueError:
            raise BadConfig(THREADS_ENV, f"expected an integer, got {raw!r}") from None
    if threads < 1:
        raise BadConfig("threads", f"must be at least 1, got {threads}")
    return threads


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        print(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Report written to {out}")


if __name__ == "__main__":
    sys.exit(main())
