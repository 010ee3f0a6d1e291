# clusterfx/inference/schemas.py
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..core.config import Transform


class ContrastKind(str, Enum):
    """Hypotheses of the T x 2 layout"""
    INTERVENTION = "intervention"
    TIME = "time"
    INTERACTION = "interaction"
    CUSTOM = "custom"


STANDARD_KINDS = (ContrastKind.INTERVENTION, ContrastKind.TIME, ContrastKind.INTERACTION)


@dataclass(frozen=True)
class ContrastSpec:
    """Hypothesis H0: T_proj p = 0, with T_proj the orthogonal projector onto the row space of C"""
    kind: ContrastKind
    T_proj: np.ndarray
    C: Optional[np.ndarray] = None

    @property
    def rank(self) -> int:
        return int(round(float(np.trace(self.T_proj))))


class HypothesisTest(BaseModel):
    """ANOVA-type test with Box-type degrees of freedom"""
    name: str = Field(..., description="Hypothesis label")
    statistic: float = Field(..., ge=0.0, description="Q_N")
    f_hat: float = Field(..., gt=0.0, description="Estimated degrees of freedom")
    p_value: float = Field(..., ge=0.0, le=1.0, description="Upper chi-square tail at f_hat * Q_N")
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)

    def reject_at(self, alpha: float) -> bool:
        return self.p_value < alpha

    @property
    def rejected(self) -> bool:
        return self.reject_at(self.alpha)


class WaldTest(BaseModel):
    """Wald-type test; chi-square with rank(C V C') degrees of freedom"""
    name: str
    statistic: float = Field(..., ge=0.0)
    df: int = Field(..., ge=1)
    p_value: float = Field(..., ge=0.0, le=1.0)
    liberal: bool = Field(
        default=True, description="Known to exceed the nominal level in small samples"
    )

    def reject_at(self, alpha: float) -> bool:
        return self.p_value < alpha


class CellInterval(BaseModel):
    """Confidence interval of one relative effect"""
    group: int
    period: int
    estimate: float
    lower: Optional[float] = None
    upper: Optional[float] = None
    note: Optional[str] = Field(None, description="Why no interval was produced")


class EffectCI(BaseModel):
    """Per-cell confidence intervals"""
    transform: Transform
    alpha: float
    cells: List[CellInterval] = Field(default_factory=list)

    def cell(self, j: int, l: int) -> CellInterval:
        for interval in self.cells:
            if interval.group == j and interval.period == l:
                return interval
        raise KeyError((j, l))


class PrePostTest(BaseModel):
    """Change between periods within one group, tested through a single-row contrast"""
    group: int
    pre: float
    post: float
    diff: float = Field(..., description="pre - post")
    statistic: Optional[float] = None
    f_hat: Optional[float] = None
    p_value: Optional[float] = None
    note: Optional[str] = None


class AnalysisReport(BaseModel):
    """Everything produced by one analysis of a dataset"""
    T: int
    N: int
    alpha: float
    transform: Transform
    counts: List[Dict[str, Any]] = Field(default_factory=list, description="Per-cell counts")
    p_hat: List[float]
    W_hat: List[List[float]]
    V_hat: List[List[float]]
    decomposition: Dict[str, Any]
    tests: Dict[str, Optional[HypothesisTest]] = Field(default_factory=dict)
    wald_tests: Dict[str, Optional[WaldTest]] = Field(default_factory=dict)
    intervals: EffectCI
    pre_post: List[PrePostTest] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)
