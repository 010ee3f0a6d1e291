# clusterfx/sim/blocks.py
"""Compound-symmetry covariance (or scale) matrices for one cluster."""

import logging
from typing import Sequence

import numpy as np

from ..core.exceptions import NotPSD

logger = logging.getLogger(__name__)

EIGEN_TOL = 1e-12


def block_cov(m1: int, m2: int, rho: Sequence[float], sigma2: Sequence[float], check: bool = True) -> np.ndarray:
    """
    Covariance of the m1 pre and m2 post observations of a cluster.

    Diagonal blocks are sigma_l^2 [I + rho_l (J - I)], the off-diagonal block is
    rho_12 sigma_1 sigma_2 J.
    """
    if m1 < 0 or m2 < 0:
        raise NotPSD(f"cluster sizes must be non-negative, got ({m1}, {m2})")
    rho1, rho2, rho12 = rho
    var1, var2 = sigma2
    s1, s2 = np.sqrt(var1), np.sqrt(var2)

    m = m1 + m2
    cov = np.empty((m, m))
    cov[:m1, :m1] = var1 * (np.eye(m1) + rho1 * (np.ones((m1, m1)) - np.eye(m1)))
    cov[m1:, m1:] = var2 * (np.eye(m2) + rho2 * (np.ones((m2, m2)) - np.eye(m2)))
    cov[:m1, m1:] = rho12 * s1 * s2
    cov[m1:, :m1] = rho12 * s1 * s2

    if check and m > 0:
        smallest = float(np.linalg.eigvalsh(cov).min())
        if smallest < -EIGEN_TOL * max(1.0, float(np.abs(cov).max())):
            raise NotPSD(
                f"block matrix for sizes ({m1}, {m2}) with rho={tuple(rho)} "
                f"has eigenvalue {smallest:.4g}"
            )
    return cov


def nearest_psd(cov: np.ndarray) -> np.ndarray:
    """Project onto the PSD cone by flooring eigenvalues at zero"""
    eigenvalues, U = np.linalg.eigh(cov)
    repaired = (U * np.clip(eigenvalues, 0.0, None)) @ U.T
    return 0.5 * (repaired + repaired.T)


def psd_factor(cov: np.ndarray) -> np.ndarray:
    """L with L L' = cov from a symmetric eigendecomposition; works for singular cov"""
    eigenvalues, U = np.linalg.eigh(cov)
    cutoff = EIGEN_TOL * max(float(eigenvalues.max(initial=0.0)), 0.0)
    eigenvalues = np.where(eigenvalues > cutoff, eigenvalues, 0.0)
    return U * np.sqrt(eigenvalues)


def check_rho(M: int, rho: Sequence[float], sigma2: Sequence[float]) -> None:
    """Raise NotPSD unless the block matrix is PSD for every achievable pair of sizes"""
    for m1 in range(M + 1):
        for m2 in range(M + 1):
            if m1 + m2:
                block_cov(m1, m2, rho, sigma2, check=True)
