from .logging import setup_logging
from .serialization import dump_json, to_jsonable
from .validation import ensure_finite, ensure_length, ensure_square

__all__ = [
    "setup_logging",
    "dump_json",
    "to_jsonable",
    "ensure_finite",
    "ensure_length",
    "ensure_square",
]
