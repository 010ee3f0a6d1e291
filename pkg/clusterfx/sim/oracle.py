# clusterfx/sim/oracle.py
"""Random small datasets and the fast-path versus reference comparison behind oracle-check."""

import logging
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..covariance.assembly import assemble_sigma, v_hat
from ..covariance.estimators import cluster_summaries
from ..covariance.oracle import v_hat_oracle
from ..data.schemas import ClusterRecord, StudyData
from ..ranks.algorithms import midranks, pairwise_w
from ..ranks.oracle import midranks_oracle, pairwise_w_oracle

logger = logging.getLogger(__name__)

W_TOLERANCE = 1e-12
V_TOLERANCE = 1e-10


class OracleSummary(BaseModel):
    """Largest deviations between fast paths and their quadratic-time references"""
    datasets: int
    seed: int
    max_rank_deviation: float = Field(..., ge=0.0)
    max_w_deviation: float = Field(..., ge=0.0)
    max_v_deviation: float = Field(..., ge=0.0)
    w_tolerance: float = W_TOLERANCE
    v_tolerance: float = V_TOLERANCE

    @property
    def passed(self) -> bool:
        return (
            self.max_rank_deviation <= self.w_tolerance
            and self.max_w_deviation <= self.w_tolerance
            and self.max_v_deviation <= self.v_tolerance
        )


def random_study(
    rng: np.random.Generator,
    T: Optional[int] = None,
    max_clusters: int = 4,
    max_size: int = 4,
    levels: int = 5,
) -> StudyData:
    """
    Small study with mixed complete and incomplete clusters and heavy ties.

    Values are integers in 0..levels-1. Every cell is guaranteed at least one
    observation.
    """
    T = T if T is not None else int(rng.integers(1, 4))
    records: List[ClusterRecord] = []
    for j in range(1, T + 1):
        n_c, n_1, n_2 = (int(v) for v in rng.integers(0, max_clusters + 1, size=3))
        if n_c + n_1 == 0:
            n_1 = 1
        if n_c + n_2 == 0:
            n_2 = 1
        for k in range(n_c + n_1 + n_2):
            pre = rng.integers(0, levels, size=int(rng.integers(1, max_size + 1)))
            post = rng.integers(0, levels, size=int(rng.integers(1, max_size + 1)))
            if k >= n_c + n_1:
                pre = pre[:0]
            elif k >= n_c:
                post = post[:0]
            records.append(ClusterRecord(
                group=j,
                cluster_id=f"g{j}k{k + 1}",
                pre=tuple(float(x) for x in pre),
                post=tuple(float(x) for x in post),
            ))
    return StudyData.from_clusters(records, T=T)


def run_oracle_check(datasets: int = 100, seed: int = 0) -> OracleSummary:
    rng = np.random.default_rng(seed)
    rank_dev = w_dev = v_dev = 0.0
    for _ in range(datasets):
        data = random_study(rng)
        values = data.cell_values(1, 1)
        rank_dev = max(rank_dev, float(np.abs(midranks(values) - midranks_oracle(values)).max()))

        W = pairwise_w(data)
        w_dev = max(w_dev, float(np.abs(W.W_hat - pairwise_w_oracle(data).W_hat).max()))

        V_fast = v_hat(assemble_sigma(cluster_summaries(data, W)), data.N, data.T)
        v_dev = max(v_dev, float(np.abs(V_fast - v_hat_oracle(data)).max()))

    summary = OracleSummary(
        datasets=datasets,
        seed=seed,
        max_rank_deviation=rank_dev,
        max_w_deviation=w_dev,
        max_v_deviation=v_dev,
    )
    logger.info(f"Oracle check over {datasets} datasets: passed={summary.passed}")
    return summary
