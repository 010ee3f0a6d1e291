# clusterfx/inference/manager.py
"""
Analysis pipeline for one dataset: pairwise effects, relative effects,
covariance, the three ANOVA-type tests with Wald-type companions, confidence
intervals, the additive decomposition and per-group pre-post comparisons.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..core.config import AnalysisConfig, load_config
from ..core.exceptions import BadDimension, DegenerateVariance
from ..covariance.assembly import estimate_covariance
from ..covariance.schemas import CovEstimate
from ..data.loader import load_csv
from ..data.schemas import StudyData
from ..data.validation import validate
from ..effects.estimator import decompose, effects_from_pairwise
from ..effects.schemas import EffectEstimate
from ..ranks.algorithms import pairwise_w
from .contrasts import build_contrast
from .intervals import effect_ci
from .schemas import STANDARD_KINDS, AnalysisReport, HypothesisTest, WaldTest
from .statistics import anova_type_test, pre_post_tests, wald_type_test

logger = logging.getLogger(__name__)


class ClusteredEffectsAnalyzer:
    """
    Nonparametric analysis of partially complete clustered pre-post data.

    Numerical degeneracies the method tolerates (too few clusters for a
    covariance component, eigenvalue flooring, boundary effects, hypotheses
    without estimated variability) end up in ``AnalysisReport.warnings``
    instead of aborting the analysis.
    """

    def __init__(self, config: Optional[AnalysisConfig] = None):
        self.config = config or AnalysisConfig()

    @classmethod
    def from_config_file(cls, config_path: Optional[Union[str, Path]] = None, **overrides) -> "ClusteredEffectsAnalyzer":
        return cls(load_config(config_path, **overrides))

    # ========== CORE INDEPENDENT FUNCTIONALITY ==========

    def analyze(self, data: StudyData) -> AnalysisReport:
        logger.info(f"Analyzing T={data.T} groups, {len(data.clusters)} clusters, N={data.N}")
        warnings = validate(data, self.config.large_cluster_warning)

        est, cov = self.estimate(data)
        warnings.extend(cov.warnings)
        V_hat = cov.V_hat

        tests, wald_tests, test_warnings = self._run_tests(est, V_hat)
        warnings.extend(test_warnings)

        intervals = effect_ci(est, V_hat, est.N, self.config.alpha, self.config.transform)
        warnings.extend(
            f"cell ({c.group},{c.period}): {c.note}" for c in intervals.cells if c.note
        )
        pre_post = pre_post_tests(est, V_hat, self.config.alpha, self.config.degenerate_tol)
        warnings.extend(f"pre-post group {t.group}: {t.note}" for t in pre_post if t.note)

        report = AnalysisReport(
            T=data.T,
            N=data.N,
            alpha=self.config.alpha,
            transform=self.config.transform,
            counts=data.counts_table().to_dict(orient="records"),
            p_hat=est.p_hat.tolist(),
            W_hat=est.W_hat.tolist(),
            V_hat=V_hat.tolist(),
            decomposition=decompose(est.p_hat, data.T).as_dict(),
            tests=tests,
            wald_tests=wald_tests,
            intervals=intervals,
            pre_post=pre_post,
            warnings=list(dict.fromkeys(warnings)),
        )
        logger.info(f"Analysis finished with {len(report.warnings)} warning(s)")
        return report

    def analyze_file(self, path: Union[str, Path]) -> AnalysisReport:
        return self.analyze(load_csv(path))

    def estimate(self, data: StudyData) -> Tuple[EffectEstimate, CovEstimate]:
        """Relative effects and their covariance, sharing one pairwise effect matrix"""
        W = pairwise_w(data)
        est = effects_from_pairwise(W, data.N)
        cov = estimate_covariance(data, W, self.config)
        return est, cov

    def standard_tests(self, est: EffectEstimate, V_hat: np.ndarray) -> Dict[str, Optional[HypothesisTest]]:
        """ANOVA-type tests only; used by the simulation loop"""
        tests, _, _ = self._run_tests(est, V_hat, with_wald=False)
        return tests

    # ========== INTERNAL HELPER METHODS ==========

    def _run_tests(
        self, est: EffectEstimate, V_hat: np.ndarray, with_wald: bool = True
    ) -> Tuple[Dict[str, Optional[HypothesisTest]], Dict[str, Optional[WaldTest]], List[str]]:
        tests: Dict[str, Optional[HypothesisTest]] = {}
        wald_tests: Dict[str, Optional[WaldTest]] = {}
        warnings: List[str] = []

        for kind in STANDARD_KINDS:
            try:
                spec = build_contrast(kind, est.T, tol=self.config.pinv_tol)
            except BadDimension as e:
                warnings.append(f"{kind.value} hypothesis not tested: {e}")
                continue

            try:
                tests[kind.value] = anova_type_test(
                    est, V_hat, spec, self.config.alpha, self.config.degenerate_tol
                )
            except DegenerateVariance as e:
                logger.warning(f"ANOVA-type test skipped: {e}")
                warnings.append(str(e))
                tests[kind.value] = None

            if not with_wald:
                continue
            try:
                wald_tests[kind.value] = wald_type_test(
                    est, V_hat, spec, tol=self.config.pinv_tol, degenerate_tol=self.config.degenerate_tol
                )
            except DegenerateVariance:
                wald_tests[kind.value] = None

        return tests, wald_tests, warnings
