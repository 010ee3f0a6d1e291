# clusterfx/covariance/schemas.py
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..data.schemas import cell_index


@dataclass(frozen=True)
class CellSummary:
    """
    Cluster means of the normalized ECDFs for the clusters observed in one cell.

    ``Y[k, x]`` is the mean of F_x over the observations of cluster k in this
    cell, for every reference cell x. Rows follow the cluster order of the
    study; ``complete`` flags which rows belong to complete clusters.
    """
    group: int
    period: int
    Y: np.ndarray          # (n_members, 2T)
    m: np.ndarray          # (n_members,) observations per cluster in this cell
    complete: np.ndarray   # (n_members,) bool
    N: int                 # observations in the cell

    @property
    def n_complete(self) -> int:
        return int(self.complete.sum())

    @property
    def n_incomplete(self) -> int:
        return int((~self.complete).sum())


@dataclass(frozen=True)
class ClusterSummaries:
    """Per-cell cluster summaries plus the pairwise effects used for centering"""
    T: int
    cells: Tuple[CellSummary, ...]   # lexicographic cell order
    W_hat: np.ndarray

    @property
    def n_cells(self) -> int:
        return 2 * self.T

    def cell(self, j: int, l: int) -> CellSummary:
        return self.cells[cell_index(j, l)]

    def contributions(self, j: int, l: int) -> np.ndarray:
        """
        Centered contributions (m / N_jl) (Y - w_(x)(jl)) of every cluster in
        cell (j, l), one row per cluster, one column per reference cell x.
        """
        summary = self.cell(j, l)
        centre = self.W_hat[:, cell_index(j, l)]
        return (summary.m / summary.N)[:, None] * (summary.Y - centre[None, :])

    def complete_contributions(self, j: int, l: int) -> np.ndarray:
        return self.contributions(j, l)[self.cell(j, l).complete]

    def incomplete_contributions(self, j: int, l: int) -> np.ndarray:
        return self.contributions(j, l)[~self.cell(j, l).complete]


@dataclass(frozen=True)
class CovEstimate:
    """
    Covariance of the pairwise effect estimates and of sqrt(N) (p_hat - p).

    ``Sigma_hat[a, b, x, y]`` is Cov(Z_(x)(a), Z_(y)(b)) for cells a, b and
    reference cells x, y. ``V_hat`` is filled in by v_hat.
    """
    Sigma_hat: np.ndarray
    V_hat: Optional[np.ndarray] = None
    N: Optional[int] = None
    warnings: List[str] = field(default_factory=list)
    floored: bool = False
