# clusterfx/effects/schemas.py
from dataclasses import dataclass
from typing import Dict

import numpy as np

from ..data.schemas import cell_index
from ..ranks.schemas import PairwiseEffects


@dataclass(frozen=True)
class EffectEstimate:
    """Relative effects p_jl of every cell against the unweighted mean distribution"""
    p_hat: np.ndarray
    N: int
    W: PairwiseEffects

    @property
    def T(self) -> int:
        return self.W.T

    @property
    def W_hat(self) -> np.ndarray:
        return self.W.W_hat

    def p(self, j: int, l: int) -> float:
        return float(self.p_hat[cell_index(j, l)])


@dataclass(frozen=True)
class EffectDecomposition:
    """Additive split p_jl = 1/2 + alpha_j + beta_l + alphabeta_jl with zero-sum side conditions"""
    alpha: np.ndarray       # intervention, length T
    beta: np.ndarray        # time, length 2
    alphabeta: np.ndarray   # interaction, T x 2
    grand_mean: float = 0.5  # 1/2 for estimated effects

    def reconstruct(self) -> np.ndarray:
        """Cell effects in lexicographic order"""
        grid = self.grand_mean + self.alpha[:, None] + self.beta[None, :] + self.alphabeta
        return grid.reshape(-1)

    def as_dict(self) -> Dict[str, list]:
        return {
            "alpha": self.alpha.tolist(),
            "beta": self.beta.tolist(),
            "alphabeta": self.alphabeta.tolist(),
            "grand_mean": self.grand_mean,
        }
