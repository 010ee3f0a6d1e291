# clusterfx/inference/intervals.py
import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy.special import expit, logit
from scipy.stats import norm

from ..core.config import Transform
from ..core.exceptions import BoundaryEffect
from ..data.schemas import cell_labels
from ..effects.schemas import EffectEstimate
from .schemas import CellInterval, EffectCI

logger = logging.getLogger(__name__)


def logit_interval(p: float, se: float, z: float) -> Tuple[float, float]:
    """Delta-method interval built on the logit scale around logit(p), mapped back"""
    if p <= 0.0 or p >= 1.0:
        raise BoundaryEffect(f"relative effect {p} lies on the boundary; logit is undefined")
    half_width = z * se / (p * (1.0 - p))
    if half_width == 0.0:
        return p, p
    centre = logit(p)
    return min(float(expit(centre - half_width)), p), max(float(expit(centre + half_width)), p)


def effect_ci(
    est: EffectEstimate,
    V_hat: np.ndarray,
    N: Optional[int] = None,
    alpha: float = 0.05,
    transform: Union[Transform, str] = Transform.LOGIT,
) -> EffectCI:
    """
    Per-cell (1 - alpha) intervals for p_jl with standard error sqrt(v_(jl)(jl) / N).

    Cells where the logit is undefined get no interval and a note; the other
    cells are unaffected.
    """
    transform = Transform(transform)
    N = est.N if N is None else N
    z = float(norm.ppf(1.0 - alpha / 2.0))

    cells = []
    for index, (j, l) in enumerate(cell_labels(est.T)):
        p = float(est.p_hat[index])
        se = math.sqrt(max(float(V_hat[index, index]), 0.0) / N)
        if transform == Transform.IDENTITY:
            cells.append(CellInterval(group=j, period=l, estimate=p, lower=p - z * se, upper=p + z * se))
            continue
        try:
            lower, upper = logit_interval(p, se, z)
        except BoundaryEffect as e:
            logger.warning(f"No interval for cell ({j},{l}): {e}")
            cells.append(CellInterval(group=j, period=l, estimate=p, note=str(e)))
            continue
        cells.append(CellInterval(group=j, period=l, estimate=p, lower=lower, upper=upper))

    return EffectCI(transform=transform, alpha=alpha, cells=cells)
