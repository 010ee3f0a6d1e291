# clusterfx/covariance/assembly.py
"""
Assembly of the covariance of the pairwise effects from tau and eta.

With a = (j,l), b = (r,s) and reference cells x = (p,q), y = (p',q'),

    sigma_ab(x, y) = C1 - C2 - C5 + C6 + C11 - C12 - C15 + C16

where the tau terms need the two cells involved to share a group and the eta
terms need them to be the same cell:

    C1   group(x) == group(y)   tau_group(x)^(q,q')(a, b)
    C2   group(x) == r          tau_r^(q,s)(a, y)
    C5   group(y) == j          tau_j^(l,q')(x, b)
    C6   j == r                 tau_j^(l,s)(x, y)
    C11  x == y                 eta_x(a, b)
    C12  x == b                 eta_b(a, y)
    C15  y == a                 eta_a(x, b)
    C16  a == b                 eta_a(x, y)

All other terms of the full 16-term expansion vanish identically. Entries
with x == a or y == b are exactly zero since Z_(a)(a) = 0.
"""

import logging
from typing import List, Optional, Tuple, Union

import numpy as np

from ..core.config import AnalysisConfig
from ..core.exceptions import DimensionMismatch
from ..data.schemas import StudyData
from ..ranks.schemas import PairwiseEffects
from .estimators import cluster_summaries, eta_tensor, tau_tensor
from .schemas import ClusterSummaries, CovEstimate

logger = logging.getLogger(__name__)


def assemble_sigma(summaries: ClusterSummaries) -> CovEstimate:
    """Sigma_hat[a, b, x, y] from the case rules; V_hat is left empty"""
    tau_all, tau_warnings = tau_tensor(summaries)
    eta_all, eta_warnings = eta_tensor(summaries)

    d = summaries.n_cells
    idx = np.arange(d)
    G, Q = idx // 2, idx % 2
    a = idx[:, None, None, None]
    b = idx[None, :, None, None]
    x = idx[None, None, :, None]
    y = idx[None, None, None, :]

    C1 = np.where(G[x] == G[y], tau_all[G[x], Q[x], Q[y], a, b], 0.0)
    C2 = np.where(G[x] == G[b], tau_all[G[b], Q[x], Q[b], a, y], 0.0)
    C5 = np.where(G[y] == G[a], tau_all[G[a], Q[a], Q[y], x, b], 0.0)
    C6 = np.where(G[a] == G[b], tau_all[G[a], Q[a], Q[b], x, y], 0.0)
    C11 = np.where(x == y, eta_all[G[x], Q[x], a, b], 0.0)
    C12 = np.where(x == b, eta_all[G[b], Q[b], a, y], 0.0)
    C15 = np.where(y == a, eta_all[G[a], Q[a], x, b], 0.0)
    C16 = np.where(a == b, eta_all[G[a], Q[a], x, y], 0.0)

    sigma = C1 - C2 - C5 + C6 + C11 - C12 - C15 + C16
    sigma = np.where((x == a) | (y == b), 0.0, sigma)

    return CovEstimate(Sigma_hat=sigma, warnings=tau_warnings + eta_warnings)


def v_hat(sigma: Union[CovEstimate, np.ndarray], N: int, T: int) -> np.ndarray:
    """
    V_hat = N E Sigma E' where each 2T x 2T block is averaged over its
    reference cells: v_(a)(b) = N (2T)^-2 sum_xy sigma_ab(x, y).
    """
    Sigma_hat = sigma.Sigma_hat if isinstance(sigma, CovEstimate) else np.asarray(sigma)
    d = 2 * T
    if Sigma_hat.shape != (d, d, d, d):
        raise DimensionMismatch(f"Sigma_hat must have shape {(d, d, d, d)}, got {Sigma_hat.shape}")
    V = N * Sigma_hat.mean(axis=(2, 3))
    return 0.5 * (V + V.T)


def floor_eigenvalues(V: np.ndarray, psd_tol: float = 1e-10) -> Tuple[np.ndarray, bool]:
    """
    Clip eigenvalues below zero when the smallest is under -psd_tol * trace(V).

    Smaller negative eigenvalues are rounding noise and are left alone.
    """
    eigenvalues, eigenvectors = np.linalg.eigh(V)
    threshold = -psd_tol * max(float(np.trace(V)), 0.0)
    if eigenvalues.min() >= threshold:
        return V, False
    logger.warning(
        f"V_hat has eigenvalue {eigenvalues.min():.3e} below {threshold:.3e}; flooring at zero"
    )
    clipped = (eigenvectors * np.clip(eigenvalues, 0.0, None)) @ eigenvectors.T
    return 0.5 * (clipped + clipped.T), True


def estimate_covariance(
    data: StudyData,
    W: Optional[PairwiseEffects] = None,
    config: Optional[AnalysisConfig] = None,
) -> CovEstimate:
    """Summaries, Sigma_hat, V_hat and eigenvalue flooring in one pass"""
    config = config or AnalysisConfig()
    summaries = cluster_summaries(data, W)
    assembled = assemble_sigma(summaries)
    V = v_hat(assembled, data.N, data.T)
    V, floored = floor_eigenvalues(V, config.psd_tol)

    warnings: List[str] = list(assembled.warnings)
    if floored:
        warnings.append("negative eigenvalues of V_hat floored at zero")
    return CovEstimate(
        Sigma_hat=assembled.Sigma_hat, V_hat=V, N=data.N, warnings=warnings, floored=floored
    )
