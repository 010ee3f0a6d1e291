# clusterfx/inference/statistics.py
"""
ANOVA-type and Wald-type statistics for linear hypotheses about p.

The ANOVA-type statistic Q_N = N p' T p / tr(T V) is referred to a scaled
chi-square: f Q_N ~ chi2_f with f = tr(T V)^2 / tr(T V T V).
"""

import logging
from typing import List, Optional, Union

import numpy as np
from scipy.special import gammaincc

from ..core.exceptions import DegenerateVariance, DimensionMismatch
from ..effects.schemas import EffectEstimate
from ..utils.validation import ensure_square
from .contrasts import build_contrast, pinv
from .schemas import ContrastKind, ContrastSpec, HypothesisTest, PrePostTest, WaldTest

logger = logging.getLogger(__name__)

DEGENERATE_TOL = 1e-14


def chi2_tail(x: float, f: float) -> float:
    """P(chi2_f > x) as the regularized upper incomplete gamma Q(f/2, x/2); f may be fractional"""
    if x <= 0.0:
        return 1.0
    return float(gammaincc(0.5 * f, 0.5 * x))


def anova_type_test(
    est: EffectEstimate,
    V_hat: np.ndarray,
    spec: ContrastSpec,
    alpha: float = 0.05,
    degenerate_tol: float = DEGENERATE_TOL,
    name: Optional[str] = None,
) -> HypothesisTest:
    V_hat = _check_inputs(est, V_hat)
    T_proj = spec.T_proj
    TV = T_proj @ V_hat
    trace_TV = float(np.trace(TV))
    if trace_TV <= degenerate_tol:
        raise DegenerateVariance(
            f"tr(T V) = {trace_TV:.3e}: no estimated variability in the {spec.kind.value} hypothesis"
        )

    quadratic = float(est.p_hat @ T_proj @ est.p_hat)
    Q_N = max(est.N * quadratic / trace_TV, 0.0)
    f_hat = trace_TV ** 2 / float(np.trace(TV @ TV))
    p_value = chi2_tail(f_hat * Q_N, f_hat)

    logger.debug(f"{spec.kind.value}: Q_N={Q_N:.6g}, f_hat={f_hat:.6g}, p={p_value:.6g}")
    return HypothesisTest(
        name=name or spec.kind.value,
        statistic=Q_N,
        f_hat=f_hat,
        p_value=min(max(p_value, 0.0), 1.0),
        alpha=alpha,
    )


def wald_type_test(
    est: EffectEstimate,
    V_hat: np.ndarray,
    C: Union[np.ndarray, ContrastSpec],
    N: Optional[int] = None,
    tol: float = 1e-12,
    degenerate_tol: float = DEGENERATE_TOL,
    name: Optional[str] = None,
) -> WaldTest:
    """
    W_N = N (C p)' (C V C')^+ (C p) against chi2 with rank(C V C') degrees of freedom.

    Tends to reject too often with few clusters; the result carries that flag.
    """
    V_hat = _check_inputs(est, V_hat)
    if isinstance(C, ContrastSpec):
        label = name or C.kind.value
        C = C.C if C.C is not None else C.T_proj
    else:
        label = name or ContrastKind.CUSTOM.value
    C = np.atleast_2d(np.asarray(C, dtype=float))
    if C.shape[1] != est.p_hat.size:
        raise DimensionMismatch(f"C must have {est.p_hat.size} columns, got {C.shape[1]}")
    N = est.N if N is None else N

    middle = C @ V_hat @ C.T
    if float(np.trace(middle)) <= degenerate_tol:
        raise DegenerateVariance(f"tr(C V C') = {np.trace(middle):.3e} for the {label} hypothesis")

    eigenvalues = np.linalg.eigvalsh(0.5 * (middle + middle.T))
    df = int((np.abs(eigenvalues) > tol * np.abs(eigenvalues).max()).sum())
    Cp = C @ est.p_hat
    statistic = max(float(N * Cp @ pinv(middle, tol) @ Cp), 0.0)
    p_value = chi2_tail(statistic, df)
    return WaldTest(name=label, statistic=statistic, df=df, p_value=min(max(p_value, 0.0), 1.0))


def pre_post_tests(
    est: EffectEstimate,
    V_hat: np.ndarray,
    alpha: float = 0.05,
    degenerate_tol: float = DEGENERATE_TOL,
) -> List[PrePostTest]:
    """
    Per-group comparison of p_j1 and p_j2 through the single-row contrast
    e_j1 - e_j2, referred to chi2 with f_hat = 1.
    """
    T = est.T
    results: List[PrePostTest] = []
    for j in range(1, T + 1):
        row = np.zeros(2 * T)
        row[2 * (j - 1)] = 1.0
        row[2 * (j - 1) + 1] = -1.0
        spec = build_contrast(ContrastKind.CUSTOM, T, C=row)
        pre, post = est.p(j, 1), est.p(j, 2)
        try:
            test = anova_type_test(
                est, V_hat, spec, alpha=alpha, degenerate_tol=degenerate_tol, name=f"pre-post group {j}"
            )
        except DegenerateVariance as e:
            logger.warning(f"Pre-post test for group {j} skipped: {e}")
            results.append(PrePostTest(group=j, pre=pre, post=post, diff=pre - post, note=str(e)))
            continue
        results.append(PrePostTest(
            group=j,
            pre=pre,
            post=post,
            diff=pre - post,
            statistic=test.statistic,
            f_hat=test.f_hat,
            p_value=test.p_value,
        ))
    return results


# ========== INTERNAL HELPER METHODS ==========

def _check_inputs(est: EffectEstimate, V_hat: np.ndarray) -> np.ndarray:
    V_hat = ensure_square(V_hat, "V_hat")
    if V_hat.shape[0] != est.p_hat.size:
        raise DimensionMismatch(
            f"V_hat is {V_hat.shape[0]}x{V_hat.shape[0]} but p_hat has length {est.p_hat.size}"
        )
    return V_hat
