# clusterfx/covariance/estimators.py
"""
Cluster-level plug-in estimators of the covariance components.

tau covers pairs of observations within complete clusters (possibly from
different periods) and eta covers incomplete clusters, which only ever
contribute within their own period.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from ..core.exceptions import NotEstimable
from ..data.schemas import StudyData, cell_labels
from ..ranks.algorithms import normalized_ecdf, pairwise_w
from ..ranks.schemas import PairwiseEffects
from .schemas import CellSummary, ClusterSummaries

logger = logging.getLogger(__name__)


def cluster_summaries(data: StudyData, W: Optional[PairwiseEffects] = None) -> ClusterSummaries:
    """Mean normalized ECDF of every cluster against every reference cell"""
    if W is None:
        W = pairwise_w(data)
    labels = cell_labels(data.T)
    sorted_cells = [data.sorted_cell(j, l) for j, l in labels]

    cells = []
    for j, l in labels:
        members = [c for c in data.group_clusters(j) if c.size(l) > 0]
        m = np.array([c.size(l) for c in members], dtype=float)
        starts = np.concatenate([[0], np.cumsum(m)[:-1]]).astype(int)
        values = data.cell_values(j, l)

        # F_x at every observation of the cell, then averaged within clusters
        F = np.vstack([normalized_ecdf(ref, values) for ref in sorted_cells])
        Y = (np.add.reduceat(F, starts, axis=1) / m[None, :]).T

        cells.append(CellSummary(
            group=j,
            period=l,
            Y=Y,
            m=m,
            complete=np.array([c.is_complete for c in members], dtype=bool),
            N=int(values.size),
        ))
    return ClusterSummaries(T=data.T, cells=tuple(cells), W_hat=W.W_hat)


def tau_hat(
    summaries: ClusterSummaries, r: int, s: int, l: int, p: int, q: int, p2: int, q2: int
) -> float:
    """
    tau_r^(s,l)(p,q,p2,q2) from the complete clusters of group r.

    n/(n-1) times the sum over clusters of the centered contribution to cell
    (r, s) against reference (p, q) times the contribution to (r, l) against
    (p2, q2).
    """
    D_s = summaries.complete_contributions(r, s)
    D_l = summaries.complete_contributions(r, l)
    n = D_s.shape[0]
    if n <= 1:
        raise NotEstimable(f"tau for group {r} needs at least 2 complete clusters, got {n}")
    x = 2 * (p - 1) + (q - 1)
    y = 2 * (p2 - 1) + (q2 - 1)
    return float(n / (n - 1) * np.dot(D_s[:, x], D_l[:, y]))


def eta_hat(
    summaries: ClusterSummaries,
    r: int,
    s: int,
    p: int,
    q: int,
    p2: int,
    q2: int,
    l: Optional[int] = None,
) -> float:
    """
    eta_r^(s,l)(p,q,p2,q2) from the incomplete clusters of cell (r, s).

    Zero when s != l since an incomplete cluster is observed in one period
    only. Zero as well when the cell has no incomplete clusters.
    """
    if l is not None and l != s:
        return 0.0
    E = summaries.incomplete_contributions(r, s)
    n = E.shape[0]
    if n == 0:
        return 0.0
    if n == 1:
        raise NotEstimable(f"eta for cell ({r},{s}) needs at least 2 incomplete clusters, got 1")
    x = 2 * (p - 1) + (q - 1)
    y = 2 * (p2 - 1) + (q2 - 1)
    return float(n / (n - 1) * np.dot(E[:, x], E[:, y]))


def tau_tensor(summaries: ClusterSummaries) -> Tuple[np.ndarray, List[str]]:
    """
    All tau estimates at once, indexed [group, s, l, x, y] (0-based).

    Groups with fewer than two complete clusters get zeros and a warning.
    """
    T, d = summaries.T, summaries.n_cells
    tau_all = np.zeros((T, 2, 2, d, d))
    warnings: List[str] = []
    for g in range(T):
        D = [summaries.complete_contributions(g + 1, s + 1) for s in range(2)]
        n = D[0].shape[0]
        if n <= 1:
            message = f"tau not estimable for group {g + 1} ({n} complete cluster(s)); contribution set to zero"
            logger.warning(message)
            warnings.append(message)
            continue
        for s in range(2):
            for l in range(2):
                tau_all[g, s, l] = n / (n - 1) * D[s].T @ D[l]
    return tau_all, warnings


def eta_tensor(summaries: ClusterSummaries) -> Tuple[np.ndarray, List[str]]:
    """All eta estimates with s == l, indexed [group, s, x, y] (0-based)"""
    T, d = summaries.T, summaries.n_cells
    eta_all = np.zeros((T, 2, d, d))
    warnings: List[str] = []
    for g in range(T):
        for s in range(2):
            E = summaries.incomplete_contributions(g + 1, s + 1)
            n = E.shape[0]
            if n <= 1:
                message = f"eta({g + 1},{s + 1}) contribution set to zero ({n} incomplete cluster(s))"
                logger.warning(message)
                warnings.append(message)
                continue
            eta_all[g, s] = n / (n - 1) * E.T @ E
    return eta_all, warnings
