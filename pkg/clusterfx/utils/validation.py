# clusterfx/utils/validation.py
from typing import Any

import numpy as np

from ..core.exceptions import DimensionMismatch


def ensure_finite(values: Any, what: str = "values") -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DimensionMismatch(f"{what} must be finite")
    return arr


def ensure_square(matrix: Any, what: str = "matrix") -> np.ndarray:
    arr = np.asarray(matrix, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{what} must be square, got shape {arr.shape}")
    return arr


def ensure_length(vector: Any, n: int, what: str = "vector") -> np.ndarray:
    arr = np.asarray(vector, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise DimensionMismatch(f"{what} must have length {n}, got shape {arr.shape}")
    return arr
