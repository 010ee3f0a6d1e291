# clusterfx/core/config.py
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .exceptions import BadConfig

logger = logging.getLogger(__name__)


class Transform(str, Enum):
    """Scale on which confidence intervals are built"""
    IDENTITY = "identity"
    LOGIT = "logit"


class AnalysisConfig(BaseModel):
    """Base configuration for an analysis run"""
    model_config = ConfigDict(extra="forbid", frozen=True)

    alpha: float = Field(default=0.05, gt=0.0, lt=1.0, description="Test level and CI error rate")
    transform: Transform = Field(default=Transform.LOGIT, description="CI transform")
    pinv_tol: float = Field(default=1e-12, gt=0.0, description="Relative singular value cutoff")
    psd_tol: float = Field(
        default=1e-10, ge=0.0,
        description="Eigenvalues of V below -psd_tol * trace(V) trigger flooring"
    )
    degenerate_tol: float = Field(
        default=1e-14, ge=0.0, description="tr(T V) at or below this is degenerate"
    )
    large_cluster_warning: int = Field(
        default=50, ge=1, description="Cluster size above which a plausibility warning is emitted"
    )


def config_from_dict(values: Dict[str, Any]) -> AnalysisConfig:
    """Build an AnalysisConfig, turning pydantic errors into BadConfig"""
    try:
        return AnalysisConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise BadConfig(key, first["msg"]) from e


def load_config(config_path: Optional[Union[str, Path]] = None, **overrides: Any) -> AnalysisConfig:
    """Load configuration from a JSON file merged over the defaults"""
    values: Dict[str, Any] = {}

    if config_path is not None:
        path = Path(config_path)
        if not path.exists():
            raise BadConfig(str(path), "configuration file not found")
        with open(path, encoding="utf-8") as f:
            try:
                user_config = json.load(f)
            except json.JSONDecodeError as e:
                raise BadConfig(str(path), f"invalid JSON: {e}") from e
        if not isinstance(user_config, dict):
            raise BadConfig(str(path), "top level must be an object")
        values.update(user_config)
        logger.debug(f"Loaded analysis config from {path}")

    values.update({k: v for k, v in overrides.items() if v is not None})
    return config_from_dict(values)
