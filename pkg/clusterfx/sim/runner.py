# clusterfx/sim/runner.py
"""
Monte Carlo driver.

Every replication gets its own generator spawned from one SeedSequence, so the
report depends only on the configuration and seed, never on the number of
workers. Tallies are integers summed in replication order.
"""

import logging
import math
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..core.config import AnalysisConfig
from ..core.exceptions import ClusterFXError
from ..inference.manager import ClusteredEffectsAnalyzer
from ..utils.serialization import dump_json
from .generators import generate_study
from .schemas import EFFECTS, EffectRate, SimulationConfig, SimulationReport

logger = logging.getLogger(__name__)

Tally = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[str, ...]]


def run_replication(config: SimulationConfig, seed: np.random.SeedSequence) -> Tally:
    """Generate one study and test the three hypotheses; returns (rejections, degenerate, warnings)"""
    rng = np.random.default_rng(seed)
    data = generate_study(config, rng)
    analyzer = ClusteredEffectsAnalyzer(AnalysisConfig(alpha=config.alpha))
    est, cov = analyzer.estimate(data)
    tests = analyzer.standard_tests(est, cov.V_hat)

    rejected = tuple(int(tests.get(e) is not None and tests[e].reject_at(config.alpha)) for e in EFFECTS)
    degenerate = tuple(int(e in tests and tests[e] is None) for e in EFFECTS)
    return rejected, degenerate, tuple(cov.warnings)


def run_experiment(config: SimulationConfig, threads: int = 1) -> SimulationReport:
    """Rejection rates (x100) of the three ANOVA-type tests over config.runs replications"""
    logger.info(
        f"Simulating {config.label or config.family.value}: {config.alternative.value} "
        f"delta={config.delta}, {config.runs} runs on {threads} worker(s)"
    )
    seeds = np.random.SeedSequence(config.seed).spawn(config.runs)
    tallies = Parallel(n_jobs=threads, prefer="threads")(
        delayed(run_replication)(config, s) for s in seeds
    )

    rejections = np.zeros(len(EFFECTS), dtype=np.int64)
    degenerate = np.zeros(len(EFFECTS), dtype=np.int64)
    warnings: Dict[str, None] = {}
    for rejected, failed, messages in tallies:
        rejections += rejected
        degenerate += failed
        warnings.update(dict.fromkeys(messages))

    rates = []
    for effect, count in zip(EFFECTS, rejections):
        r = count / config.runs
        rates.append(EffectRate(
            effect=effect,
            rate=100.0 * r,
            mc_se=100.0 * math.sqrt(r * (1.0 - r) / config.runs),
            runs=config.runs,
        ))
    report = SimulationReport(
        config=config,
        rates=rates,
        runs=config.runs,
        degenerate={e: int(n) for e, n in zip(EFFECTS, degenerate) if n},
        warnings=list(warnings),
    )
    logger.info("Rates: " + ", ".join(f"{r.effect}={r.rate:.1f}" for r in rates))
    return report


def run_sweep(configs: Iterable[SimulationConfig], threads: int = 1) -> pd.DataFrame:
    """One row per configuration with the three rejection rates and their standard errors"""
    rows = []
    for config in configs:
        try:
            report = run_experiment(config, threads)
        except ClusterFXError as e:
            logger.error(f"Configuration {config.label} failed: {e}")
            raise
        rows.append(sweep_row(report))
    return pd.DataFrame(rows)


def sweep_row(report: SimulationReport) -> Dict[str, object]:
    config = report.config
    row: Dict[str, object] = {
        "label": config.label or "",
        "family": config.family.value,
        "n_c": _allocation(config.n_c),
        "n_1": _allocation(config.n_1),
        "n_2": _allocation(config.n_2),
        "M": config.M,
        "rho": ",".join(f"{r:g}" for r in config.rho),
        "sigma2": ",".join(f"{s:g}" for s in config.sigma2),
        "alternative": config.alternative.value,
        "delta": config.delta,
        "runs": report.runs,
    }
    for rate in report.rates:
        row[rate.effect] = rate.rate
        row[f"{rate.effect}_mc_se"] = rate.mc_se
    return row


def write_report(report: SimulationReport, out_dir: Union[str, Path], stem: str = "simulation") -> List[Path]:
    """CSV with columns effect,rate,mc_se,runs and a JSON mirror of the full report"""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    json_path = out_dir / f"{stem}.json"
    frame = pd.DataFrame([r.model_dump() for r in report.rates], columns=["effect", "rate", "mc_se", "runs"])
    frame.to_csv(csv_path, index=False, encoding="utf-8")
    dump_json(report, json_path)
    return [csv_path, json_path]


def write_sweep(frame: pd.DataFrame, out_dir: Union[str, Path], stem: str = "sweep") -> List[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    json_path = out_dir / f"{stem}.json"
    frame.to_csv(csv_path, index=False, encoding="utf-8")
    dump_json(frame.to_dict(orient="records"), json_path)
    return [csv_path, json_path]


def _allocation(values: Tuple[int, ...]) -> str:
    return str(values[0]) if len(set(values)) == 1 else ",".join(str(v) for v in values)
