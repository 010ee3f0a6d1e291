# clusterfx/data/validation.py
import logging
from typing import List

from .schemas import StudyData

logger = logging.getLogger(__name__)

LARGE_CLUSTER_WARNING = 50


def validate(data: StudyData, large_cluster_warning: int = LARGE_CLUSTER_WARNING) -> List[str]:
    """
    Estimability checks for the covariance estimator.

    Returns human-readable warnings and never raises. Missingness is assumed to
    be completely at random; that cannot be checked from the data and is not.
    """
    warnings: List[str] = []
    for j in range(1, data.T + 1):
        if data.n_complete(j) <= 1:
            warnings.append(
                f"tau not estimable for group {j} "
                f"({data.n_complete(j)} complete cluster(s)); contribution set to zero"
            )
        for l in (1, 2):
            n_jl = data.n_incomplete(j, l)
            if n_jl <= 1:
                warnings.append(
                    f"eta({j},{l}) contribution set to zero ({n_jl} incomplete cluster(s))"
                )

    largest = data.max_cluster_size
    if largest > large_cluster_warning:
        warnings.append(
            f"largest cluster has {largest} observations in one period "
            f"(above {large_cluster_warning}); finite cluster sizes are assumed"
        )

    for message in warnings:
        logger.warning(message)
    return warnings
