# clusterfx/effects/estimator.py
import logging

import numpy as np

from ..data.schemas import StudyData
from ..ranks.algorithms import pairwise_w
from ..ranks.schemas import PairwiseEffects
from ..utils.validation import ensure_finite, ensure_length
from .schemas import EffectDecomposition, EffectEstimate

logger = logging.getLogger(__name__)


def averaging_matrix(T: int) -> np.ndarray:
    """E = (2T)^-1 (1' kron I), mapping the row-major flattening of W_hat to column means"""
    d = 2 * T
    return np.kron(np.ones((1, d)), np.eye(d)) / d


def effects_from_pairwise(W: PairwiseEffects, N: int) -> EffectEstimate:
    # row-major flattening of W_hat stacks its rows, so E picks out column means
    p_hat = averaging_matrix(W.T) @ W.W_hat.reshape(-1)
    return EffectEstimate(p_hat=p_hat, N=N, W=W)


def estimate_p(data: StudyData) -> EffectEstimate:
    """
    Relative effects p_jl = (2T)^-1 sum_rs w_(rs)(jl).

    Uses the unweighted mean of the 2T cell distributions as reference, so
    unequal cell sizes do not tilt the reference distribution.
    """
    estimate = effects_from_pairwise(pairwise_w(data), data.N)
    logger.debug(f"p_hat = {np.array2string(estimate.p_hat, precision=4)}")
    return estimate


def decompose(p_hat: np.ndarray, T: int) -> EffectDecomposition:
    """Intervention, time and interaction components from unweighted means"""
    p_hat = ensure_finite(ensure_length(p_hat, 2 * T, "p_hat"), "p_hat")

    grid = p_hat.reshape(T, 2)
    grand = grid.mean()
    row = grid.mean(axis=1)
    col = grid.mean(axis=0)
    return EffectDecomposition(
        alpha=row - grand,
        beta=col - grand,
        alphabeta=grid - row[:, None] - col[None, :] + grand,
        grand_mean=float(grand),
    )
