# clusterfx/inference/contrasts.py
import logging
from typing import Optional, Union

import numpy as np

from ..core.exceptions import BadDimension, DimensionMismatch
from .schemas import ContrastKind, ContrastSpec

logger = logging.getLogger(__name__)


def centering(a: int) -> np.ndarray:
    """P_a = I_a - J_a / a"""
    return np.eye(a) - np.full((a, a), 1.0 / a)


def pinv(M: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """
    Moore-Penrose inverse.

    Symmetric inputs go through eigh, everything else through the SVD.
    Singular values at or below tol times the largest are treated as zero.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise DimensionMismatch(f"pinv needs a matrix, got shape {M.shape}")

    if M.shape[0] == M.shape[1] and np.allclose(M, M.T, rtol=0.0, atol=1e-14 * max(1.0, np.abs(M).max())):
        eigenvalues, U = np.linalg.eigh(0.5 * (M + M.T))
        cutoff = tol * np.abs(eigenvalues).max() if eigenvalues.size else 0.0
        keep = np.abs(eigenvalues) > cutoff
        inverse = np.zeros_like(eigenvalues)
        inverse[keep] = 1.0 / eigenvalues[keep]
        return (U * inverse) @ U.T

    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    cutoff = tol * s.max() if s.size else 0.0
    keep = s > cutoff
    inverse = np.zeros_like(s)
    inverse[keep] = 1.0 / s[keep]
    return (Vt.T * inverse) @ U.T


def projector(C: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """C' (C C')^+ C, the orthogonal projector onto the row space of C"""
    C = np.atleast_2d(np.asarray(C, dtype=float))
    return C.T @ pinv(C @ C.T, tol) @ C


def build_contrast(
    kind: Union[ContrastKind, str],
    T: int,
    C: Optional[np.ndarray] = None,
    tol: float = 1e-12,
) -> ContrastSpec:
    """
    Projection matrix for a hypothesis about the 2T relative effects.

    Intervention: P_T kron J_2 / 2. Time: J_T / T kron P_2.
    Interaction: P_T kron P_2. Custom: projector onto the rows of C.
    """
    kind = ContrastKind(kind)

    if kind == ContrastKind.CUSTOM:
        if C is None:
            raise DimensionMismatch("a custom contrast needs a matrix C")
        C = np.atleast_2d(np.asarray(C, dtype=float))
        if C.shape[1] != 2 * T:
            raise DimensionMismatch(f"C must have {2 * T} columns, got {C.shape[1]}")
        return ContrastSpec(kind=kind, T_proj=projector(C, tol), C=C)

    if kind in (ContrastKind.INTERVENTION, ContrastKind.INTERACTION) and T < 2:
        raise BadDimension(f"{kind.value} hypothesis needs at least 2 groups, got T={T}")
    if T < 1:
        raise BadDimension(f"T must be positive, got {T}")

    if kind == ContrastKind.INTERVENTION:
        T_proj = np.kron(centering(T), np.full((2, 2), 0.5))
    elif kind == ContrastKind.TIME:
        T_proj = np.kron(np.full((T, T), 1.0 / T), centering(2))
    else:
        T_proj = np.kron(centering(T), centering(2))
    return ContrastSpec(kind=kind, T_proj=T_proj, C=T_proj)
