"""
clusterfx: nonparametric relative effects for partially complete clustered data

Estimates relative effects p_jl of a T x 2 pre-post design where clusters may
be observed in both periods or only one, estimates their covariance with the
complete and incomplete cluster components combined, and tests intervention,
time and interaction hypotheses with ANOVA-type statistics.

A Monte Carlo harness (clusterfx.sim) reproduces the Type-I error and power
studies of the method.
"""

from .version import __version__

# Configuration and errors
from .core.config import AnalysisConfig, Transform, load_config
from .core.exceptions import ClusterFXError

# Data
from .data.loader import load_csv, write_csv
from .data.schemas import ClusterRecord, StudyData

# Estimation
from .covariance.assembly import estimate_covariance
from .effects.estimator import decompose, estimate_p
from .ranks.algorithms import pairwise_w

# Inference
from .inference.contrasts import build_contrast
from .inference.intervals import effect_ci
from .inference.manager import ClusteredEffectsAnalyzer
from .inference.schemas import AnalysisReport, ContrastKind
from .inference.statistics import anova_type_test, wald_type_test

__all__ = [
    # Version
    "__version__",

    # Core
    "AnalysisConfig",
    "Transform",
    "load_config",
    "ClusterFXError",

    # Data
    "ClusterRecord",
    "StudyData",
    "load_csv",
    "write_csv",

    # Estimation
    "pairwise_w",
    "estimate_p",
    "decompose",
    "estimate_covariance",

    # Inference
    "ClusteredEffectsAnalyzer",
    "AnalysisReport",
    "ContrastKind",
    "build_contrast",
    "anova_type_test",
    "wald_type_test",
    "effect_ci",
]
