# clusterfx/sim/presets.py
"""
Standard grids for type-I error levels and power curves.

Several correlation triples of the grid are not positive semidefinite for
clusters with two or more observations per period, so every preset sets
psd_repair.
"""

from typing import Callable, Dict, List

import numpy as np

from .schemas import Alternative, Family, SimulationConfig

SAMPLE_SIZES = ((5, 10, 5), (10, 5, 5))
POWER_SIZES = (5, 5, 5)
CORRELATIONS = ((0.9, 0.9, 0.1), (0.1, 0.1, 0.9), (0.1, 0.9, 0.9))
VARIANCES = ((1.0, 1.0), (1.0, 5.0))
MAX_SIZES = (3, 6)
DELTAS = tuple(float(d) for d in np.round(np.arange(0.0, 3.0 + 1e-9, 0.3), 1))


def null_grid(runs: int = 1000, seed: int = 20240101) -> List[SimulationConfig]:
    """Type-I error grid: 2 sample sizes x 3 correlations x 2 variances x 2 maximum sizes, per family"""
    configs = []
    for family in Family:
        for n_c, n_1, n_2 in SAMPLE_SIZES:
            for rho in CORRELATIONS:
                for sigma2 in VARIANCES:
                    for M in MAX_SIZES:
                        configs.append(SimulationConfig(
                            family=family,
                            n_c=n_c,
                            n_1=n_1,
                            n_2=n_2,
                            M=M,
                            rho=rho,
                            sigma2=sigma2,
                            runs=runs,
                            seed=seed,
                            psd_repair=True,
                            label=f"{family.value} ({n_c},{n_1},{n_2}) rho={rho} sigma2={sigma2} M={M}",
                        ))
    return configs


def power_grid(
    family: Family,
    alternative: Alternative,
    correlations=CORRELATIONS,
    runs: int = 1000,
    seed: int = 20240101,
) -> List[SimulationConfig]:
    n_c, n_1, n_2 = POWER_SIZES
    return [
        SimulationConfig(
            family=family,
            n_c=n_c,
            n_1=n_1,
            n_2=n_2,
            M=M,
            rho=rho,
            sigma2=(1.0, 1.0),
            alternative=alternative,
            delta=delta,
            runs=runs,
            seed=seed,
            psd_repair=True,
            label=f"{family.value} {alternative.value} rho={rho} M={M} delta={delta:g}",
        )
        for rho in correlations
        for M in MAX_SIZES
        for delta in DELTAS
    ]


def one_point_grid(runs: int = 1000, seed: int = 20240101) -> List[SimulationConfig]:
    """One-point alternative, discretized normal"""
    return power_grid(Family.DISCRETIZED_NORMAL, Alternative.ONE_POINT, runs=runs, seed=seed)


def one_time_grid(runs: int = 1000, seed: int = 20240101) -> List[SimulationConfig]:
    """One-time alternative, discretized normal"""
    return power_grid(Family.DISCRETIZED_NORMAL, Alternative.ONE_TIME, runs=runs, seed=seed)


def increasing_trend_grid(runs: int = 1000, seed: int = 20240101) -> List[SimulationConfig]:
    """Increasing-trend alternative, discretized normal"""
    return power_grid(Family.DISCRETIZED_NORMAL, Alternative.INCREASING_TREND, runs=runs, seed=seed)


def heavy_tail_grid(runs: int = 1000, seed: int = 20240101) -> List[SimulationConfig]:
    """All three alternatives for the log-normal and Cauchy families at rho = (0.9, 0.9, 0.1)"""
    configs = []
    for family in (Family.LOG_NORMAL, Family.CAUCHY):
        for alternative in (Alternative.ONE_POINT, Alternative.ONE_TIME, Alternative.INCREASING_TREND):
            configs.extend(power_grid(family, alternative, CORRELATIONS[:1], runs=runs, seed=seed))
    return configs


PRESETS: Dict[str, Callable[..., List[SimulationConfig]]] = {
    "null": null_grid,
    "table3": null_grid,
    "one-point": one_point_grid,
    "one-time": one_time_grid,
    "increasing-trend": increasing_trend_grid,
    "heavy-tail": heavy_tail_grid,
}
