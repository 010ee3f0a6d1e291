"""
Tests for the Monte Carlo harness: block matrices, generators, configs and the runner
"""

import json

import numpy as np
import pandas as pd
import pytest
from joblib import Parallel

from clusterfx.core.exceptions import BadConfig, NotPSD
from clusterfx.effects.estimator import estimate_p
from clusterfx.sim.blocks import block_cov, check_rho, nearest_psd, psd_factor
from clusterfx.sim.config import load_simulation_config, simulation_config_from_dict
from clusterfx.sim.generators import apply_alternative, gen_cluster, gen_cluster_sizes, generate_study
from clusterfx.sim.oracle import random_study, run_oracle_check
from clusterfx.sim.presets import DELTAS, PRESETS, heavy_tail_grid, null_grid
from clusterfx.sim.runner import run_experiment, run_sweep, write_report
from clusterfx.sim.schemas import Alternative, Family, SimulationConfig


class TestBlockCov:
    """Test suite for compound-symmetry block matrices."""

    def test_one_by_one(self):
        """One pre and one post observation."""
        cov = block_cov(1, 1, (0.9, 0.9, 0.3), (1.0, 4.0))
        np.testing.assert_allclose(cov, [[1.0, 0.6], [0.6, 4.0]])

    def test_structure(self):
        """Within-period and cross-period correlations land in the right blocks."""
        cov = block_cov(2, 3, (0.5, 0.2, 0.1), (1.0, 1.0))
        assert cov.shape == (5, 5)
        assert cov[0, 1] == pytest.approx(0.5)
        assert cov[2, 4] == pytest.approx(0.2)
        assert cov[0, 4] == pytest.approx(0.1)
        np.testing.assert_allclose(np.diag(cov), 1.0)

    def test_default_correlations_positive_definite(self):
        """The default correlations give a positive definite matrix."""
        cov = block_cov(2, 2, (0.9, 0.9, 0.1), (1.0, 1.0))
        assert np.linalg.eigvalsh(cov).min() > 0.0

    def test_not_psd(self):
        """Inconsistent correlations raise NotPSD."""
        with pytest.raises(NotPSD):
            block_cov(2, 2, (0.0, 0.0, 1.0), (1.0, 1.0))

    def test_check_rho_covers_all_sizes(self):
        """check_rho tries every cluster size up to M."""
        check_rho(3, (0.9, 0.9, 0.1), (1.0, 1.0))
        with pytest.raises(NotPSD):
            check_rho(3, (0.1, 0.9, 0.9), (1.0, 1.0))

    def test_nearest_psd_and_factor(self):
        """Repair yields a PSD matrix with a valid factor."""
        cov = block_cov(2, 2, (0.1, 0.9, 0.9), (1.0, 1.0), check=False)
        repaired = nearest_psd(cov)
        assert np.linalg.eigvalsh(repaired).min() >= -1e-12
        L = psd_factor(repaired)
        np.testing.assert_allclose(L @ L.T, repaired, atol=1e-10)


class TestGenerators:
    """Test suite for data generation."""

    @pytest.mark.parametrize("M, mean", [(3, 1.6), (6, 2.5)])
    def test_cluster_sizes(self, rng, M, mean):
        """Sizes lie in 1..M with the expected mean."""
        sizes = np.array([gen_cluster_sizes(M, rng) for _ in range(20000)])
        assert sizes.min() == 1
        assert sizes.max() <= M
        assert sizes.mean() == pytest.approx(mean, abs=0.04)

    def test_zero_variance_discretized_normal(self, rng):
        """Zero covariance returns the rounded means."""
        pre, post = gen_cluster(Family.DISCRETIZED_NORMAL, 2.0, 5.0, np.zeros((3, 3)), rng, 1)
        np.testing.assert_array_equal(pre, [2.0])
        np.testing.assert_array_equal(post, [5.0, 5.0])

    def test_discretized_values_are_integers(self, rng):
        """Discretized draws are whole numbers."""
        pre, post = gen_cluster("discretized_normal", 0.3, 0.7, block_cov(2, 2, (0.5, 0.5, 0.2), (1.0, 1.0)), rng, 2)
        values = np.concatenate([pre, post])
        np.testing.assert_array_equal(values, np.round(values))

    def test_null_alternative(self):
        """The null alternative shifts nothing."""
        np.testing.assert_array_equal(apply_alternative(Alternative.NULL, 2.0), np.zeros((3, 2)))

    def test_one_point(self):
        """A single cell is shifted."""
        grid = apply_alternative("one_point", 3.0)
        assert grid[2, 1] == 3.0
        assert np.count_nonzero(grid) == 1

    def test_one_time(self):
        """Every post cell is shifted."""
        np.testing.assert_allclose(apply_alternative("one_time", 0.9), [[0, 0.9], [0, 0.9], [0, 0.9]])

    def test_increasing_trend(self):
        """Shifts grow across the six cells."""
        grid = apply_alternative(Alternative.INCREASING_TREND, 3.0)
        np.testing.assert_allclose(grid.reshape(-1), [0.5, 1.0, 1.5, 2.0, 2.5, 3.0])

    def test_generate_study_counts(self, rng):
        """The generated study has the requested allocation."""
        config = SimulationConfig(n_c=(2, 3, 4), n_1=1, n_2=2, runs=1)
        data = generate_study(config, rng)
        assert data.T == 3
        for j, n_c in enumerate((2, 3, 4), start=1):
            assert data.n_complete(j) == n_c
            assert data.n_incomplete(j, 1) == 1
            assert data.n_incomplete(j, 2) == 2
        assert data.max_cluster_size <= config.M

    def test_null_effects_center_on_one_half(self):
        """With no shift every cell has the same distribution."""
        config = SimulationConfig(n_c=40, n_1=40, n_2=40, runs=1)
        generator = np.random.default_rng(99)
        p_hat = np.mean([estimate_p(generate_study(config, generator)).p_hat for _ in range(20)], axis=0)
        np.testing.assert_allclose(p_hat, 0.5, atol=0.03)


class TestSimulationConfig:
    """Test suite for SimulationConfig validation and loading."""

    def test_broadcast_allocation(self):
        """Scalar allocations broadcast to every group."""
        config = SimulationConfig(T=2, n_c=4, n_1=0, n_2=1)
        assert config.n_c == (4, 4)
        assert config.n_1 == (0, 0)

    def test_allocation_length(self):
        """Allocations must have one entry per group."""
        with pytest.raises(BadConfig) as exc_info:
            SimulationConfig(T=2, n_c=(1, 2, 3))
        assert exc_info.value.key == "n_c"

    def test_empty_period(self):
        """Every period needs clusters."""
        with pytest.raises(BadConfig):
            SimulationConfig(n_c=0, n_1=0, n_2=3)

    def test_rho_range(self):
        """Correlations outside [-1, 1] are rejected."""
        with pytest.raises(BadConfig) as exc_info:
            SimulationConfig(rho=(1.5, 0.0, 0.0))
        assert exc_info.value.key == "rho"

    def test_non_psd_rho_needs_repair(self):
        """Non-PSD correlations need psd_repair."""
        with pytest.raises(BadConfig) as exc_info:
            SimulationConfig(rho=(0.1, 0.9, 0.9))
        assert exc_info.value.key == "rho"
        assert SimulationConfig(rho=(0.1, 0.9, 0.9), psd_repair=True).psd_repair

    def test_zero_runs(self):
        """At least one replication is required."""
        with pytest.raises(BadConfig) as exc_info:
            simulation_config_from_dict({"runs": 0})
        assert exc_info.value.key == "runs"

    def test_unknown_key(self):
        """Unknown keys are rejected by name."""
        with pytest.raises(BadConfig) as exc_info:
            simulation_config_from_dict({"replications": 10})
        assert exc_info.value.key == "replications"

    def test_load_key_value_file(self, temp_dir):
        """key = value files with comments load with overrides."""
        path = temp_dir / "sim.conf"
        path.write_text(
            "# small Cauchy run\n"
            "family = cauchy\n"
            "n_c = 4       # complete clusters per group\n"
            "rho = (0.9, 0.9, 0.1)\n"
            "runs = 10\n",
            encoding="utf-8",
        )
        config = load_simulation_config(path, seed=7)
        assert config.family == Family.CAUCHY
        assert config.n_c == (4, 4, 4)
        assert config.rho == (0.9, 0.9, 0.1)
        assert config.runs == 10
        assert config.seed == 7

    def test_load_nested_json(self, temp_dir):
        """A nested JSON simulation section loads."""
        path = temp_dir / "sim.json"
        path.write_text(json.dumps({"simulation": {"alternative": "one_time", "delta": 0.9}}), encoding="utf-8")
        config = load_simulation_config(path)
        assert config.alternative == Alternative.ONE_TIME
        assert config.delta == 0.9

    def test_load_bad_line(self, temp_dir):
        """Lines without an equals sign are rejected."""
        path = temp_dir / "sim.conf"
        path.write_text("runs 10\n", encoding="utf-8")
        with pytest.raises(BadConfig):
            load_simulation_config(path)


class TestPresets:
    """Test suite for the standard configuration grids."""

    def test_null_grid(self):
        """The null grid covers three families and 24 designs each."""
        configs = null_grid(runs=10)
        assert len(configs) == 72
        per_family = [c for c in configs if c.family == Family.DISCRETIZED_NORMAL]
        assert len(per_family) == 24
        assert all(c.alternative == Alternative.NULL for c in configs)

    def test_power_grids(self):
        """Power grids sweep eleven shifts."""
        assert len(DELTAS) == 11
        assert DELTAS[-1] == 3.0
        assert len(PRESETS["one-time"](runs=10)) == 3 * 2 * 11
        assert {c.family for c in heavy_tail_grid(runs=10)} == {Family.LOG_NORMAL, Family.CAUCHY}

    def test_table3_alias(self):
        """table3 runs the null grid."""
        assert PRESETS["table3"] is null_grid
        assert PRESETS["table3"](runs=5) == PRESETS["null"](runs=5)


class TestRunner:
    """Test suite for run_experiment and friends."""

    def test_single_run_rates(self):
        """One replication gives rates of 0 or 100."""
        report = run_experiment(SimulationConfig(runs=1, seed=3))
        assert [r.effect for r in report.rates] == ["intervention", "time", "interaction"]
        for rate in report.rates:
            assert rate.rate in (0.0, 100.0)
            assert rate.mc_se == 0.0

    def test_same_seed_same_report(self):
        """The same seed gives the same rates."""
        config = SimulationConfig(n_c=3, n_1=3, n_2=3, runs=12, seed=11)
        assert run_experiment(config).rates == run_experiment(config).rates

    def test_independent_of_worker_count(self):
        """Worker count does not change the rates."""
        config = SimulationConfig(n_c=3, n_1=3, n_2=3, runs=8, seed=5)
        assert run_experiment(config, threads=1).rates == run_experiment(config, threads=2).rates

    def test_replications_run_on_threads(self, monkeypatch):
        """Replications are dispatched to a thread-backed joblib pool."""
        calls = []

        def recording_parallel(*args, **kwargs):
            calls.append(kwargs)
            return Parallel(*args, **kwargs)

        monkeypatch.setattr("clusterfx.sim.runner.Parallel", recording_parallel)
        report = run_experiment(SimulationConfig(n_c=3, n_1=3, n_2=3, runs=4, seed=2), threads=2)
        assert report.runs == 4
        assert calls == [{"n_jobs": 2, "prefer": "threads"}]

    def test_write_report(self, temp_dir):
        """Reports are written as CSV and JSON."""
        report = run_experiment(SimulationConfig(runs=2, seed=1))
        csv_path, json_path = write_report(report, temp_dir, stem="null")
        frame = pd.read_csv(csv_path)
        assert list(frame.columns) == ["effect", "rate", "mc_se", "runs"]
        assert len(frame) == 3
        assert json.loads(json_path.read_text(encoding="utf-8"))["runs"] == 2

    def test_sweep(self):
        """A sweep returns one row per configuration."""
        configs = [SimulationConfig(runs=2, seed=1, label="a"), SimulationConfig(runs=2, seed=2, label="b")]
        frame = run_sweep(configs)
        assert list(frame["label"]) == ["a", "b"]
        assert {"intervention", "time", "interaction", "time_mc_se"} <= set(frame.columns)


class TestOracleCheck:
    """Test suite for the fast-path versus reference comparison."""

    def test_passes(self):
        """The fast path agrees with the references."""
        summary = run_oracle_check(10, seed=4)
        assert summary.passed
        assert summary.max_w_deviation <= 1e-12
        assert summary.max_v_deviation <= 1e-10

    def test_reproducible(self):
        """The check is reproducible for a seed."""
        assert run_oracle_check(5, seed=8) == run_oracle_check(5, seed=8)

    def test_random_study_has_every_cell(self, rng):
        """Random studies have every cell filled."""
        for _ in range(20):
            data = random_study(rng)
            assert all(data.cell_sizes >= 1)
