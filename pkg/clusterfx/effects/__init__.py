from .estimator import averaging_matrix, decompose, effects_from_pairwise, estimate_p
from .schemas import EffectDecomposition, EffectEstimate

__all__ = [
    "EffectEstimate",
    "EffectDecomposition",
    "averaging_matrix",
    "effects_from_pairwise",
    "estimate_p",
    "decompose",
]
