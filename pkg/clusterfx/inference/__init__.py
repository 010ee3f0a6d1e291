from .contrasts import build_contrast, centering, pinv, projector
from .intervals import effect_ci, logit_interval
from .manager import ClusteredEffectsAnalyzer
from .schemas import (
    AnalysisReport,
    CellInterval,
    ContrastKind,
    ContrastSpec,
    EffectCI,
    HypothesisTest,
    PrePostTest,
    WaldTest,
)
from .statistics import anova_type_test, chi2_tail, pre_post_tests, wald_type_test

__all__ = [
    "ClusteredEffectsAnalyzer",
    "AnalysisReport",
    "CellInterval",
    "ContrastKind",
    "ContrastSpec",
    "EffectCI",
    "HypothesisTest",
    "PrePostTest",
    "WaldTest",
    "centering",
    "build_contrast",
    "projector",
    "pinv",
    "anova_type_test",
    "wald_type_test",
    "chi2_tail",
    "pre_post_tests",
    "effect_ci",
    "logit_interval",
]
