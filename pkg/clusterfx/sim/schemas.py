# clusterfx/sim/schemas.py
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.exceptions import BadConfig, NotPSD
from .blocks import check_rho


class Family(str, Enum):
    """Distribution families of the simulation study"""
    DISCRETIZED_NORMAL = "discretized_normal"
    LOG_NORMAL = "log_normal"
    CAUCHY = "cauchy"


class Alternative(str, Enum):
    """Location-shift patterns over the T x 2 cells"""
    NULL = "null"
    ONE_POINT = "one_point"              # last group, post period only
    ONE_TIME = "one_time"                # every post cell
    INCREASING_TREND = "increasing_trend"


EFFECTS = ("intervention", "time", "interaction")


class SimulationConfig(BaseModel):
    """
    One Monte Carlo setting.

    n_c, n_1 and n_2 give complete, pre-only and post-only clusters per group;
    a single integer is used for every group.
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    family: Family = Field(default=Family.DISCRETIZED_NORMAL)
    T: int = Field(default=3, ge=1, description="Intervention groups")
    n_c: Tuple[int, ...] = Field(default=(5, 5, 5), description="Complete clusters per group")
    n_1: Tuple[int, ...] = Field(default=(10, 10, 10), description="Pre-only clusters per group")
    n_2: Tuple[int, ...] = Field(default=(5, 5, 5), description="Post-only clusters per group")
    M: int = Field(default=3, ge=1, description="Maximum cluster size per period")
    rho: Tuple[float, float, float] = Field(default=(0.9, 0.9, 0.1), description="(rho_1, rho_2, rho_12)")
    sigma2: Tuple[float, float] = Field(default=(1.0, 1.0), description="(sigma_1^2, sigma_2^2)")
    alternative: Alternative = Field(default=Alternative.NULL)
    delta: float = Field(default=0.0, ge=0.0, description="Shift coefficient")
    runs: int = Field(default=1000, ge=1, description="Replications")
    alpha: float = Field(default=0.05, gt=0.0, lt=1.0)
    seed: int = Field(default=20240101, ge=0, lt=2 ** 64)
    psd_repair: bool = Field(
        default=False, description="Project non-PSD block matrices onto the PSD cone instead of rejecting"
    )
    label: Optional[str] = Field(default=None, description="Row label in sweep tables")

    @model_validator(mode="before")
    @classmethod
    def _broadcast_allocation(cls, values: Any) -> Any:
        if isinstance(values, dict):
            T = int(values.get("T", 3))
            values = dict(values)
            for key, default in (("n_c", 5), ("n_1", 10), ("n_2", 5)):
                v = values.get(key, default)
                if isinstance(v, int) and not isinstance(v, bool):
                    values[key] = (v,) * T
        return values

    @field_validator("rho")
    @classmethod
    def _rho_range(cls, v: Tuple[float, float, float]) -> Tuple[float, float, float]:
        if not all(-1.0 <= r <= 1.0 for r in v):
            raise BadConfig("rho", f"correlations must lie in [-1, 1], got {v}")
        return v

    @field_validator("sigma2")
    @classmethod
    def _positive_variances(cls, v: Tuple[float, float]) -> Tuple[float, float]:
        if not all(s > 0.0 for s in v):
            raise BadConfig("sigma2", f"variances must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def _check_design(self) -> "SimulationConfig":
        for key in ("n_c", "n_1", "n_2"):
            allocation = getattr(self, key)
            if len(allocation) != self.T:
                raise BadConfig(key, f"needs {self.T} entries, got {len(allocation)}")
            if any(n < 0 for n in allocation):
                raise BadConfig(key, f"cluster counts must be non-negative, got {allocation}")
        for j in range(self.T):
            if self.n_c[j] + self.n_1[j] == 0 or self.n_c[j] + self.n_2[j] == 0:
                raise BadConfig("n_c", f"group {j + 1} would leave a period without clusters")
        if not self.psd_repair:
            try:
                check_rho(self.M, self.rho, self.sigma2)
            except NotPSD as e:
                raise BadConfig("rho", f"{e}; set psd_repair to project onto the PSD cone") from e
        return self


class EffectRate(BaseModel):
    """Rejection rate of one hypothesis, in percent"""
    effect: str
    rate: float = Field(..., ge=0.0, le=100.0)
    mc_se: float = Field(..., ge=0.0, description="Monte Carlo standard error, percentage points")
    runs: int


class SimulationReport(BaseModel):
    config: SimulationConfig
    rates: List[EffectRate]
    runs: int
    degenerate: Dict[str, int] = Field(
        default_factory=dict, description="Replications where a test had no estimated variability"
    )
    warnings: List[str] = Field(default_factory=list)

    def rate(self, effect: str) -> float:
        for row in self.rates:
            if row.effect == effect:
                return row.rate
        raise KeyError(effect)
