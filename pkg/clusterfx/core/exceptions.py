# clusterfx/core/exceptions.py
"""
Exception hierarchy for clusterfx.

None of these derive from ValueError: pydantic validators let them propagate
unchanged instead of folding them into a ValidationError.
"""

from typing import Optional, Sequence


class ClusterFXError(Exception):
    """Root of every error raised by clusterfx"""


# ========== DATA ERRORS ==========

class DataError(ClusterFXError):
    """Problems with an input dataset"""


class MalformedRow(DataError):
    """A CSV row that cannot be parsed"""

    def __init__(self, line: int, reason: str, path: Optional[str] = None):
        self.line = line
        self.reason = reason
        self.path = path
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: malformed row ({reason})")


class EmptyCell(DataError):
    """A (group, period) cell without any observation"""

    def __init__(self, group: int, period: int, source: Optional[str] = None):
        self.group = group
        self.period = period
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}cell (group={group}, period={period}) has no observations")


class DuplicateKey(DataError):
    """The same group/cluster/period/visit appears twice"""

    def __init__(self, line: int, key: tuple, path: Optional[str] = None):
        self.line = line
        self.key = key
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: duplicate group/cluster/period/visit {key}")


class NonContiguousGroups(DataError):
    """Group labels are not exactly 1..T"""

    def __init__(self, groups: Sequence[int], source: Optional[str] = None):
        self.groups = sorted(groups)
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}group labels must be 1..T without gaps, got {self.groups}")


# ========== NUMERICAL ERRORS ==========

class DimensionMismatch(ClusterFXError):
    """Array or matrix shape does not match the design"""


class BadDimension(ClusterFXError):
    """A contrast cannot be built for the requested number of groups"""


class NotEstimable(ClusterFXError):
    """A covariance component has too few clusters to be estimated"""


class DegenerateVariance(ClusterFXError):
    """Zero estimated variability in the hypothesis space"""


class BoundaryEffect(ClusterFXError):
    """A relative effect sits on 0 or 1 where the logit is undefined"""


class NotPSD(ClusterFXError):
    """A covariance or scale matrix is not positive semidefinite"""


# ========== CONFIGURATION ERRORS ==========

class BadConfig(ClusterFXError):
    """Invalid configuration value"""

    def __init__(self, key: str, reason: str):
        self.key = key
        self.reason = reason
        super().__init__(f"bad configuration for '{key}': {reason}")
