# clusterfx/sim/generators.py
"""
Clustered pre-post data under the compound-symmetry model.

Each cluster draws its pre and post sizes independently, then a joint vector
from the chosen family with the block matrix of block_cov as covariance
(normal families) or scale matrix (Cauchy). Incomplete clusters are drawn in
full and lose one period, so missingness is completely at random.
"""

import logging
from functools import lru_cache
from typing import List, Tuple, Union

import numpy as np

from ..data.schemas import ClusterRecord, StudyData
from .blocks import block_cov, nearest_psd, psd_factor
from .schemas import Alternative, Family, SimulationConfig

logger = logging.getLogger(__name__)

SIZE_PROBABILITY = 0.3


def gen_cluster_sizes(M: int, rng: np.random.Generator) -> int:
    """Binomial(M - 1, 0.3) + 1, so every size from 1 to M is possible"""
    return int(rng.binomial(M - 1, SIZE_PROBABILITY)) + 1


def gen_cluster(
    family: Union[Family, str],
    mean_pre: float,
    mean_post: float,
    cov: np.ndarray,
    rng: np.random.Generator,
    m1: int,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    One cluster's pre (first m1 coordinates) and post observations.

    DiscretizedNormal rounds mean + Z to the nearest integer. LogNormal
    exponentiates Z and then adds the mean. Cauchy divides Z by |W| for one
    standard normal W per cluster and adds the mean.
    """
    family = Family(family)
    factor = psd_factor(cov)
    return _draw(family, mean_pre, mean_post, factor, rng, m1)


def apply_alternative(kind: Union[Alternative, str], delta: float, T: int = 3) -> np.ndarray:
    """T x 2 grid of location shifts"""
    kind = Alternative(kind)
    grid = np.zeros((T, 2))
    if kind == Alternative.ONE_POINT:
        grid[T - 1, 1] = delta
    elif kind == Alternative.ONE_TIME:
        grid[:, 1] = delta
    elif kind == Alternative.INCREASING_TREND:
        grid = delta * np.arange(1, 2 * T + 1).reshape(T, 2) / (2 * T)
    return grid


def generate_study(config: SimulationConfig, rng: np.random.Generator) -> StudyData:
    """One replication: complete, pre-only and post-only clusters for every group"""
    mu = apply_alternative(config.alternative, config.delta, config.T)
    records: List[ClusterRecord] = []
    for j in range(config.T):
        kinds = ["c"] * config.n_c[j] + ["1"] * config.n_1[j] + ["2"] * config.n_2[j]
        for k, kind in enumerate(kinds):
            m1 = gen_cluster_sizes(config.M, rng)
            m2 = gen_cluster_sizes(config.M, rng)
            factor = _cached_factor(m1, m2, config.rho, config.sigma2, config.psd_repair)
            pre, post = _draw(config.family, mu[j, 0], mu[j, 1], factor, rng, m1)
            records.append(ClusterRecord(
                group=j + 1,
                cluster_id=f"{kind}{k + 1}",
                pre=tuple(pre.tolist()) if kind != "2" else (),
                post=tuple(post.tolist()) if kind != "1" else (),
            ))
    return StudyData.from_clusters(records, T=config.T)


# ========== INTERNAL HELPER METHODS ==========

def _draw(
    family: Family,
    mean_pre: float,
    mean_post: float,
    factor: np.ndarray,
    rng: np.random.Generator,
    m1: int,
) -> Tuple[np.ndarray, np.ndarray]:
    z = factor @ rng.standard_normal(factor.shape[1])
    mean = np.concatenate([np.full(m1, mean_pre), np.full(z.size - m1, mean_post)])

    if family == Family.DISCRETIZED_NORMAL:
        x = np.rint(mean + z)
    elif family == Family.LOG_NORMAL:
        x = np.exp(z) + mean
    else:
        x = z / abs(rng.standard_normal()) + mean
    return x[:m1], x[m1:]


@lru_cache(maxsize=256)
def _cached_factor(
    m1: int, m2: int, rho: Tuple[float, float, float], sigma2: Tuple[float, float], repair: bool
) -> np.ndarray:
    cov = block_cov(m1, m2, rho, sigma2, check=not repair)
    if repair:
        repaired = nearest_psd(cov)
        if not np.allclose(repaired, cov):
            logger.warning(f"Block matrix for sizes ({m1}, {m2}) projected onto the PSD cone")
        cov = repaired
    return psd_factor(cov)
