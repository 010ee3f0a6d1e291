from .config import AnalysisConfig, Transform, config_from_dict, load_config
from .exceptions import (
    BadConfig,
    BadDimension,
    BoundaryEffect,
    ClusterFXError,
    DataError,
    DegenerateVariance,
    DimensionMismatch,
    DuplicateKey,
    EmptyCell,
    MalformedRow,
    NonContiguousGroups,
    NotEstimable,
    NotPSD,
)

__all__ = [
    "AnalysisConfig",
    "Transform",
    "config_from_dict",
    "load_config",
    "ClusterFXError",
    "DataError",
    "MalformedRow",
    "EmptyCell",
    "DuplicateKey",
    "NonContiguousGroups",
    "DimensionMismatch",
    "BadDimension",
    "NotEstimable",
    "DegenerateVariance",
    "BoundaryEffect",
    "NotPSD",
    "BadConfig",
]
