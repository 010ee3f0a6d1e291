# clusterfx/sim/config.py
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import ValidationError

from ..core.exceptions import BadConfig
from .schemas import SimulationConfig

logger = logging.getLogger(__name__)


def simulation_config_from_dict(values: Dict[str, Any]) -> SimulationConfig:
    """Validate a settings mapping, reporting the offending key on failure"""
    try:
        return SimulationConfig(**values)
    except ValidationError as e:
        first = e.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise BadConfig(key, first["msg"]) from e


def load_simulation_config(path: Union[str, Path], **overrides: Any) -> SimulationConfig:
    """
    Read a simulation configuration.

    Accepts JSON, either flat or nested under a "simulation" key, or flat
    ``key = value`` lines with ``#`` comments. Values in the text form are
    parsed as JSON when possible, so ``rho = [0.9, 0.9, 0.1]`` and
    ``family = cauchy`` both work.
    """
    path = Path(path)
    if not path.exists():
        raise BadConfig(str(path), "configuration file not found")
    text = path.read_text(encoding="utf-8")

    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as e:
            raise BadConfig(str(path), f"invalid JSON: {e}") from e
        if isinstance(values.get("simulation"), dict):
            values = values["simulation"]
    else:
        values = _parse_key_values(text, str(path))

    values.update({k: v for k, v in overrides.items() if v is not None})
    config = simulation_config_from_dict(values)
    logger.debug(f"Loaded simulation config from {path}: {config.model_dump()}")
    return config


# ========== INTERNAL HELPER METHODS ==========

def _parse_key_values(text: str, source: str) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise BadConfig(f"{source}:{lineno}", "expected 'key = value'")
        key, raw = (part.strip() for part in body.split("=", 1))
        if raw.startswith("(") and raw.endswith(")"):
            raw = "[" + raw[1:-1] + "]"
        try:
            values[key] = json.loads(raw)
        except json.JSONDecodeError:
            values[key] = raw
    return values
