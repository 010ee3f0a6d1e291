from .algorithms import count, ecdf_eval, midranks, normalized_ecdf, pairwise_w
from .oracle import midranks_oracle, pairwise_w_oracle
from .schemas import PairwiseEffects

__all__ = [
    "PairwiseEffects",
    "count",
    "midranks",
    "normalized_ecdf",
    "ecdf_eval",
    "pairwise_w",
    "midranks_oracle",
    "pairwise_w_oracle",
]
