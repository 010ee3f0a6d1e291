from .loader import load_csv, write_csv
from .schemas import (
    ClusterRecord,
    ClusterStatus,
    PeriodLabel,
    StudyData,
    cell_index,
    cell_labels,
)
from .validation import validate

__all__ = [
    "ClusterRecord",
    "ClusterStatus",
    "PeriodLabel",
    "StudyData",
    "cell_index",
    "cell_labels",
    "load_csv",
    "write_csv",
    "validate",
]
