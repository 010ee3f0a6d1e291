# clusterfx/ranks/oracle.py
"""Quadratic-time reference implementations used by tests and oracle-check."""

import numpy as np

from ..data.schemas import StudyData, cell_labels
from .algorithms import count
from .schemas import PairwiseEffects


def midranks_oracle(values: np.ndarray) -> np.ndarray:
    """R_i = 1/2 + sum_j c(values_i - values_j)"""
    values = np.asarray(values, dtype=float)
    return 0.5 + count(np.subtract.outer(values, values)).sum(axis=1)


def pairwise_w_oracle(data: StudyData) -> PairwiseEffects:
    """Double sum (1 / (N_a N_b)) sum sum c(X_b - X_a) over every pair of cells"""
    cells = [data.cell_values(j, l) for j, l in cell_labels(data.T)]
    size = len(cells)
    W_hat = np.empty((size, size))
    for a in range(size):
        for b in range(size):
            W_hat[a, b] = count(np.subtract.outer(cells[b], cells[a])).mean()
    return PairwiseEffects(W_hat=W_hat, T=data.T)
