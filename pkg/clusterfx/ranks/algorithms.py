# clusterfx/ranks/algorithms.py
"""
Normalized count function, mid-ranks, normalized ECDFs and the pairwise
relative-effect matrix. Everything here depends on the observations only
through their order and ties.
"""

import logging
from typing import Union

import numpy as np
from scipy.stats import rankdata

from ..data.schemas import StudyData, cell_labels
from .schemas import PairwiseEffects

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def count(u: ArrayLike) -> ArrayLike:
    """Normalized count: 0 for u < 0, 1/2 for u = 0, 1 for u > 0"""
    result = 0.5 * (np.sign(u) + 1.0)
    return float(result) if np.ndim(result) == 0 else result


def midranks(values: np.ndarray) -> np.ndarray:
    """Ranks with ties receiving the average of the positions they occupy"""
    return rankdata(np.asarray(values, dtype=float), method="average")


def normalized_ecdf(sorted_values: np.ndarray, x: ArrayLike) -> ArrayLike:
    """
    Mean of the left- and right-continuous ECDF of an already sorted sample.

    Each atom contributes half its weight at its own location.
    """
    n = sorted_values.size
    below = np.searchsorted(sorted_values, x, side="left")
    at_or_below = np.searchsorted(sorted_values, x, side="right")
    result = (below + at_or_below) / (2.0 * n)
    return float(result) if np.ndim(result) == 0 else result


def ecdf_eval(data: StudyData, j: int, l: int, x: ArrayLike) -> ArrayLike:
    """Normalized ECDF of cell (j, l) at x, pooling complete and incomplete clusters"""
    return normalized_ecdf(data.sorted_cell(j, l), x)


def pairwise_w(data: StudyData) -> PairwiseEffects:
    """
    Pairwise effects from pooled mid-ranks of every pair of cells.

    For reference cell a and cell b the estimate is
    (mean rank of b - mean rank of a) / (N_a + N_b) + 1/2. Only the upper
    triangle is ranked; the lower triangle is its complement to one.
    """
    cells = [data.cell_values(j, l) for j, l in cell_labels(data.T)]
    size = len(cells)
    W_hat = np.full((size, size), 0.5)

    for a in range(size):
        for b in range(a + 1, size):
            n_a, n_b = cells[a].size, cells[b].size
            ranks = midranks(np.concatenate([cells[a], cells[b]]))
            w_ab = (ranks[n_a:].mean() - ranks[:n_a].mean()) / (n_a + n_b) + 0.5
            W_hat[a, b] = w_ab
            W_hat[b, a] = 1.0 - w_ab

    logger.debug(f"Computed {size}x{size} pairwise effect matrix")
    return PairwiseEffects(W_hat=W_hat, T=data.T)
