# clusterfx/data/schemas.py
"""
Dataset model for partially complete clustered pre-post factorial data.

Groups j = 1..T and periods l = 1 (pre), 2 (post) span 2T design cells,
ordered lexicographically (1,1), (1,2), ..., (T,1), (T,2). A cluster is
complete when it has observations in both periods and incomplete otherwise.
"""

import math
from collections import defaultdict
from enum import Enum, IntEnum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from ..core.exceptions import DataError, DuplicateKey, EmptyCell, MalformedRow, NonContiguousGroups


class PeriodLabel(IntEnum):
    """The two observation periods of the design"""
    PRE = 1
    POST = 2


class ClusterStatus(str, Enum):
    """Completeness of a cluster, derived from which periods carry data"""
    COMPLETE = "complete"
    INCOMPLETE_PRE = "incomplete_pre"      # observed before the intervention only
    INCOMPLETE_POST = "incomplete_post"    # observed after the intervention only


def cell_index(group: int, period: int) -> int:
    """0-based position of cell (group, period) in lexicographic order"""
    return 2 * (group - 1) + (period - 1)


def cell_labels(T: int) -> List[Tuple[int, int]]:
    return [(j, l) for j in range(1, T + 1) for l in (1, 2)]


class ClusterRecord(BaseModel):
    """One independent cluster with its per-period observation vectors"""
    model_config = ConfigDict(frozen=True)

    group: int = Field(..., ge=1, description="Intervention group j (1-based)")
    cluster_id: str = Field(..., description="Opaque cluster identifier")
    pre: Tuple[float, ...] = Field(default=(), description="Observations in period 1, visit order")
    post: Tuple[float, ...] = Field(default=(), description="Observations in period 2, visit order")

    @field_validator("pre", "post")
    @classmethod
    def _finite(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if not all(math.isfinite(x) for x in v):
            raise DataError("observations must be finite reals")
        return v

    @model_validator(mode="after")
    def _not_empty(self) -> "ClusterRecord":
        if not self.pre and not self.post:
            raise DataError(
                f"cluster '{self.cluster_id}' in group {self.group} has no observations in either period"
            )
        return self

    @property
    def status(self) -> ClusterStatus:
        if self.pre and self.post:
            return ClusterStatus.COMPLETE
        return ClusterStatus.INCOMPLETE_PRE if self.pre else ClusterStatus.INCOMPLETE_POST

    @property
    def is_complete(self) -> bool:
        return bool(self.pre) and bool(self.post)

    def period(self, l: int) -> Tuple[float, ...]:
        """Observations of period l (1 = pre, 2 = post)"""
        return self.pre if l == PeriodLabel.PRE else self.post

    def size(self, l: int) -> int:
        return len(self.period(l))


class StudyData(BaseModel):
    """
    Full design of T groups by 2 periods.

    Immutable after construction. Every cell must hold at least one observation.
    Derived counts follow the usual notation: n_complete(j) is n_j^(c),
    n_incomplete(j, l) is n_jl, obs_count(j, l) is N_jl and N is the total.
    """
    model_config = ConfigDict(frozen=True)

    T: int = Field(..., ge=1, description="Number of intervention groups")
    clusters: Tuple[ClusterRecord, ...] = Field(..., description="All clusters, ordered by group")

    _cells: Dict[Tuple[int, int], np.ndarray] = PrivateAttr(default_factory=dict)
    _sorted: Dict[Tuple[int, int], np.ndarray] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_design(self) -> "StudyData":
        groups = {c.group for c in self.clusters}
        if not groups.issubset(range(1, self.T + 1)):
            raise NonContiguousGroups(groups)

        seen = set()
        for c in self.clusters:
            key = (c.group, c.cluster_id)
            if key in seen:
                raise DataError(f"cluster {c.cluster_id!r} appears twice in group {c.group}")
            seen.add(key)

        sizes = defaultdict(int)
        for c in self.clusters:
            sizes[(c.group, 1)] += len(c.pre)
            sizes[(c.group, 2)] += len(c.post)
        for j, l in cell_labels(self.T):
            if sizes[(j, l)] == 0:
                raise EmptyCell(j, l)
        return self

    def model_post_init(self, __context: Any) -> None:
        for j, l in cell_labels(self.T):
            values = np.fromiter(
                (x for c in self.clusters if c.group == j for x in c.period(l)), dtype=float
            )
            self._cells[(j, l)] = values
            self._sorted[(j, l)] = np.sort(values, kind="stable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StudyData):
            return NotImplemented
        return self.T == other.T and self.clusters == other.clusters

    def __hash__(self) -> int:
        return hash((self.T, self.clusters))

    # ========== CONSTRUCTION ==========

    @classmethod
    def from_clusters(cls, clusters: Iterable[ClusterRecord], T: Optional[int] = None) -> "StudyData":
        """Build from cluster records; T defaults to the largest group label"""
        ordered = sorted(clusters, key=lambda c: c.group)
        if not ordered:
            raise DataError("no clusters given")
        groups = {c.group for c in ordered}
        if T is None:
            T = max(groups)
            if groups != set(range(1, T + 1)):
                raise NonContiguousGroups(groups)
        return cls(T=T, clusters=tuple(ordered))

    @classmethod
    def from_arrays(
        cls,
        group: Sequence[int],
        cluster: Sequence[Any],
        period: Sequence[int],
        value: Sequence[float],
        visit: Optional[Sequence[int]] = None,
        T: Optional[int] = None,
        lines: Optional[Sequence[int]] = None,
        source: Optional[str] = None,
    ) -> "StudyData":
        """
        Build from long-format columns, one observation per entry.

        Clusters keep their first-appearance order within each group and
        observations are ordered by visit inside a period. ``lines`` maps each
        entry to a file line for error messages.
        """
        n = len(value)
        if not (len(group) == len(cluster) == len(period) == n):
            raise DataError("long-format columns must have equal length")
        if visit is None:
            visit = list(range(1, n + 1))
        if lines is None:
            lines = list(range(1, n + 1))
        if n == 0:
            raise DataError("no observations")

        obs: Dict[Tuple[int, str], Dict[int, List[Tuple[int, float]]]] = {}
        keys_seen: Dict[Tuple[int, str, int, int], int] = {}
        for g, k, l, v, x, line in zip(group, cluster, period, visit, value, lines):
            g, l, v = int(g), int(l), int(v)
            k = str(k)
            if l not in (PeriodLabel.PRE, PeriodLabel.POST):
                raise MalformedRow(line, f"period must be 1 or 2, got {l}", source)
            if not math.isfinite(float(x)):
                raise MalformedRow(line, f"value must be finite, got {x}", source)
            key = (g, k, l, v)
            if key in keys_seen:
                raise DuplicateKey(line, key, source)
            keys_seen[key] = line
            obs.setdefault((g, k), {1: [], 2: []})[l].append((v, float(x)))

        groups = {g for g, _ in obs}
        if T is None:
            T = max(groups)
        if groups != set(range(1, T + 1)):
            raise NonContiguousGroups(groups, source)

        records = [
            ClusterRecord(
                group=g,
                cluster_id=k,
                pre=tuple(x for _, x in sorted(periods[1], key=lambda p: p[0])),
                post=tuple(x for _, x in sorted(periods[2], key=lambda p: p[0])),
            )
            for (g, k), periods in obs.items()
        ]
        try:
            return cls.from_clusters(records, T=T)
        except EmptyCell as e:
            raise EmptyCell(e.group, e.period, source) from None

    # ========== CELL ACCESS ==========

    def cell_values(self, j: int, l: int) -> np.ndarray:
        """All observations of cell (j, l), complete and incomplete clusters pooled"""
        self._check_cell(j, l)
        return self._cells[(j, l)]

    def sorted_cell(self, j: int, l: int) -> np.ndarray:
        self._check_cell(j, l)
        return self._sorted[(j, l)]

    def group_clusters(self, j: int) -> List[ClusterRecord]:
        return [c for c in self.clusters if c.group == j]

    def complete_clusters(self, j: int) -> List[ClusterRecord]:
        return [c for c in self.clusters if c.group == j and c.is_complete]

    def incomplete_clusters(self, j: int, l: int) -> List[ClusterRecord]:
        """Incomplete clusters of group j observed in period l only"""
        return [c for c in self.clusters if c.group == j and not c.is_complete and c.size(l) > 0]

    # ========== DERIVED COUNTS ==========

    def n_complete(self, j: int) -> int:
        return len(self.complete_clusters(j))

    def n_incomplete(self, j: int, l: int) -> int:
        return len(self.incomplete_clusters(j, l))

    def n_clusters(self, j: int) -> int:
        return len(self.group_clusters(j))

    def obs_complete(self, j: int, l: int) -> int:
        return sum(c.size(l) for c in self.complete_clusters(j))

    def obs_incomplete(self, j: int, l: int) -> int:
        return sum(c.size(l) for c in self.incomplete_clusters(j, l))

    def obs_count(self, j: int, l: int) -> int:
        return int(self.cell_values(j, l).size)

    def group_obs(self, j: int) -> int:
        return self.obs_count(j, 1) + self.obs_count(j, 2)

    @property
    def N(self) -> int:
        return sum(self.group_obs(j) for j in range(1, self.T + 1))

    @property
    def n_cells(self) -> int:
        return 2 * self.T

    @property
    def cell_sizes(self) -> np.ndarray:
        """N_jl for every cell in lexicographic order"""
        return np.array([self.obs_count(j, l) for j, l in cell_labels(self.T)], dtype=float)

    @property
    def max_cluster_size(self) -> int:
        return max(max(len(c.pre), len(c.post)) for c in self.clusters)

    def counts_table(self) -> pd.DataFrame:
        """Per-cell cluster and observation counts"""
        rows = [
            {
                "group": j,
                "period": l,
                "n_complete": self.n_complete(j),
                "n_incomplete": self.n_incomplete(j, l),
                "N_complete": self.obs_complete(j, l),
                "N_incomplete": self.obs_incomplete(j, l),
                "N": self.obs_count(j, l),
            }
            for j, l in cell_labels(self.T)
        ]
        return pd.DataFrame(rows)

    # ========== INTERNAL HELPER METHODS ==========

    def _check_cell(self, j: int, l: int) -> None:
        if (j, l) not in self._cells:
            raise EmptyCell(j, l)
