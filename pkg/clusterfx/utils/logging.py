# clusterfx/utils/logging.py
import logging
from typing import Union

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(level: Union[str, int] = "WARNING") -> None:
    """Configure root logging for command-line use"""
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)
    logging.getLogger("clusterfx").setLevel(level)
