# clusterfx/ranks/schemas.py
from dataclasses import dataclass

import numpy as np

from ..data.schemas import cell_index


@dataclass(frozen=True)
class PairwiseEffects:
    """
    Matrix of pairwise relative effects between design cells.

    ``W_hat[a, b]`` estimates w_ab = P(X_a < X_b) + P(X_a = X_b) / 2, with rows
    and columns in lexicographic cell order. The diagonal is 1/2 and
    ``W_hat + W_hat.T`` is the all-ones matrix.
    """
    W_hat: np.ndarray
    T: int

    @property
    def n_cells(self) -> int:
        return 2 * self.T

    def w(self, r: int, s: int, j: int, l: int) -> float:
        """Effect of cell (j, l) relative to reference cell (r, s), 1-based labels"""
        return float(self.W_hat[cell_index(r, s), cell_index(j, l)])
