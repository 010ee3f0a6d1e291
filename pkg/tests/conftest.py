import tempfile
from pathlib import Path

import numpy as np
import pytest

from clusterfx.data.schemas import ClusterRecord, StudyData
from clusterfx.sim.oracle import random_study

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def temp_dir():
    """Temporary directory for tests"""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def fixtures_dir():
    """Bundled CSV and configuration files"""
    return FIXTURES


@pytest.fixture
def rng():
    """Seeded generator so failures reproduce"""
    return np.random.default_rng(12345)


@pytest.fixture
def make_study():
    """Build StudyData from {group: [(pre, post), ...]}"""
    def _make(groups, T=None):
        records = [
            ClusterRecord(group=j, cluster_id=f"k{k}", pre=tuple(pre), post=tuple(post))
            for j, clusters in groups.items()
            for k, (pre, post) in enumerate(clusters, start=1)
        ]
        return StudyData.from_clusters(records, T=T)
    return _make


@pytest.fixture
def balanced_study(make_study):
    """T=2 with 3 complete, 2 pre-only and 2 post-only clusters per group"""
    return make_study({
        1: [([1, 3], [2]), ([4], [5, 6]), ([2, 2], [3]), ([1], []), ([5, 2], []), ([], [4]), ([], [1, 6])],
        2: [([3], [4, 4]), ([6, 1], [2]), ([2], [7]), ([3, 5], []), ([4], []), ([], [5, 2]), ([], [3])],
    })


@pytest.fixture
def random_studies():
    """A spread of small random designs with ties and mixed completeness"""
    generator = np.random.default_rng(2024)
    return [random_study(generator) for _ in range(15)]
