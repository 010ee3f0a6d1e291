"""
End-to-end tests of the command-line front end on bundled fixture files
"""

import json

import pandas as pd
import pytest

from clusterfx.cli import EXIT_ERROR, EXIT_OK, build_parser, main


class TestAnalyzeCommand:
    """Test suite for `clusterfx analyze`."""

    def test_text_report(self, fixtures_dir, capsys):
        """The text report has every section."""
        assert main(["analyze", str(fixtures_dir / "small.csv")]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Relative effects with 95% confidence intervals (logit)" in out
        assert "Pre-post comparison by group" in out
        assert "interaction" in out

    def test_text_report_shows_decomposition(self, fixtures_dir, capsys):
        """Every part of the decomposition is printed, one interaction row per group."""
        assert main(["analyze", str(fixtures_dir / "small.csv")]) == EXIT_OK
        out = capsys.readouterr().out
        decomposition = out[out.index("Decomposition"):]
        assert "  intervention: " in decomposition
        assert "  time:         " in decomposition
        assert "  interaction:" in decomposition
        assert "    group 1: " in decomposition
        assert "    group 2: " in decomposition
        assert "  grand mean:   0.5000" in decomposition

    def test_json_numbers_match_text(self, fixtures_dir, capsys):
        """The text report rounds the numbers carried by the JSON report."""
        path = str(fixtures_dir / "null_like.csv")
        assert main(["analyze", path, "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert main(["analyze", path, "--text"]) == EXIT_OK
        text = capsys.readouterr().out

        for cell in report["intervals"]["cells"]:
            assert f"{cell['estimate']:.4f}" in text
            assert f"{cell['lower']:.4f}" in text
        for test in report["tests"].values():
            assert f"{test['p_value']:.4f}" in text
            assert test["p_value"] > 0.05
        for row in report["decomposition"]["alphabeta"]:
            assert " ".join(f"{x:.4f}" for x in row) in text

    def test_alpha_and_transform_flags(self, fixtures_dir, capsys):
        """Command-line flags override the defaults."""
        args = ["analyze", str(fixtures_dir / "null_like.csv"), "--json", "--alpha", "0.1", "--transform", "identity"]
        assert main(args) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["alpha"] == 0.1
        assert report["transform"] == "identity"

    def test_out_file(self, fixtures_dir, temp_dir):
        """--out writes the report and creates missing directories."""
        out = temp_dir / "reports" / "small.json"
        assert main(["analyze", str(fixtures_dir / "small.csv"), "--json", "--out", str(out)]) == EXIT_OK
        assert json.loads(out.read_text(encoding="utf-8"))["T"] == 2

    def test_empty_cell_exit_code(self, fixtures_dir, capsys):
        """An empty cell exits with 2 and names the file and the cell."""
        path = fixtures_dir / "empty_cell.csv"
        assert main(["analyze", str(path)]) == EXIT_ERROR
        err = capsys.readouterr().err
        assert f"error: {path}: cell (group=2, period=2) has no observations" in err

    def test_malformed_row_reports_location(self, fixtures_dir, capsys):
        """Parse errors carry file and line."""
        path = fixtures_dir / "malformed.csv"
        assert main(["analyze", str(path)]) == EXIT_ERROR
        assert f"{path}:3" in capsys.readouterr().err

    def test_invalid_utf8_exit_code(self, temp_dir, capsys):
        """Undecodable bytes exit with 2 and a located message, not a traceback."""
        path = temp_dir / "binary.csv"
        path.write_bytes(b"group,cluster,period,visit,value\n\xff\xfe\n")
        assert main(["analyze", str(path)]) == EXIT_ERROR
        err = capsys.readouterr().err
        assert f"{path}:2" in err
        assert "invalid UTF-8" in err

    def test_hash_in_cluster_id(self, temp_dir, capsys):
        """A # inside a row is part of the data."""
        path = temp_dir / "hash.csv"
        path.write_text(
            "group,cluster,period,visit,value\n"
            "1,a#1,1,1,2\n1,a#1,2,1,3\n1,a#2,1,1,1\n1,a#2,2,1,5\n"
            "2,b#1,1,1,4\n2,b#1,2,1,2\n2,b#2,1,1,3\n2,b#2,2,1,6\n",
            encoding="utf-8",
        )
        assert main(["analyze", str(path), "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["N"] == 8

    def test_bad_config_exit_code(self, fixtures_dir, temp_dir, capsys):
        """An invalid analysis config exits with 2 and names the key."""
        config = temp_dir / "analysis.json"
        config.write_text(json.dumps({"alpha": 2}), encoding="utf-8")
        assert main(["analyze", str(fixtures_dir / "small.csv"), "--config", str(config)]) == EXIT_ERROR
        assert "alpha" in capsys.readouterr().err


class TestSimulateCommand:
    """Test suite for `clusterfx simulate`."""

    def test_config_file_writes_reports(self, temp_dir, capsys):
        """A configuration file run writes CSV and JSON named after the file."""
        config = temp_dir / "null.conf"
        config.write_text("runs = 3\nseed = 9\nn_c = 3\nn_1 = 3\nn_2 = 3\n", encoding="utf-8")
        out_dir = temp_dir / "out"
        assert main(["simulate", str(config), "--out", str(out_dir)]) == EXIT_OK
        frame = pd.read_csv(out_dir / "null.csv")
        assert list(frame["effect"]) == ["intervention", "time", "interaction"]
        assert (out_dir / "null.json").exists()
        assert "intervention" in capsys.readouterr().out

    def test_thread_count_does_not_change_output(self, temp_dir):
        """Output files are byte-identical for one and two workers."""
        config = temp_dir / "det.conf"
        config.write_text("runs = 6\nseed = 21\nn_c = 3\nn_1 = 3\nn_2 = 3\n", encoding="utf-8")
        assert main(["simulate", str(config), "--threads", "1", "--out", str(temp_dir / "one")]) == EXIT_OK
        assert main(["simulate", str(config), "--threads", "2", "--out", str(temp_dir / "two")]) == EXIT_OK
        for name in ("det.csv", "det.json"):
            first = (temp_dir / "one" / name).read_text(encoding="utf-8")
            second = (temp_dir / "two" / name).read_text(encoding="utf-8")
            assert first == second

    def test_threads_from_environment(self, temp_dir, monkeypatch):
        """CLUSTERFX_THREADS supplies the worker count."""
        monkeypatch.setenv("CLUSTERFX_THREADS", "2")
        config = temp_dir / "env.conf"
        config.write_text("runs = 2\nn_c = 3\nn_1 = 3\nn_2 = 3\n", encoding="utf-8")
        assert main(["simulate", str(config)]) == EXIT_OK

    def test_bad_thread_environment(self, temp_dir, monkeypatch, capsys):
        """A non-integer CLUSTERFX_THREADS is a configuration error."""
        monkeypatch.setenv("CLUSTERFX_THREADS", "many")
        assert main(["simulate", "--runs", "1"]) == EXIT_ERROR
        assert "CLUSTERFX_THREADS" in capsys.readouterr().err

    def test_zero_runs(self, capsys):
        """--runs must be positive."""
        assert main(["simulate", "--runs", "0"]) == EXIT_ERROR
        assert "runs" in capsys.readouterr().err

    def test_bad_config_key(self, temp_dir, capsys):
        """A misspelled key is reported by name."""
        config = temp_dir / "typo.conf"
        config.write_text("famliy = cauchy\n", encoding="utf-8")
        assert main(["simulate", str(config)]) == EXIT_ERROR
        assert "famliy" in capsys.readouterr().err

    def test_preset_and_config_are_exclusive(self, temp_dir):
        """A file and a preset cannot be combined."""
        config = temp_dir / "x.conf"
        config.write_text("runs = 1\n", encoding="utf-8")
        assert main(["simulate", str(config), "--preset", "null"]) == EXIT_ERROR

    @pytest.mark.parametrize("name", ["table3", "null", "one-point", "one-time", "increasing-trend", "heavy-tail"])
    def test_preset_names_accepted(self, name):
        """Every registered preset name parses."""
        assert build_parser().parse_args(["simulate", "--preset", name]).preset == name

    def test_table3_preset(self, temp_dir):
        """--preset table3 runs the 72 null configurations."""
        assert main(["simulate", "--preset", "table3", "--runs", "1", "--out", str(temp_dir)]) == EXIT_OK
        frame = pd.read_csv(temp_dir / "table3.csv")
        assert len(frame) == 72

    @pytest.mark.slow
    def test_null_preset(self, temp_dir):
        """The null grid writes one row per configuration."""
        assert main(["simulate", "--preset", "null", "--runs", "20", "--out", str(temp_dir)]) == EXIT_OK
        frame = pd.read_csv(temp_dir / "null.csv")
        assert len(frame) == 72
        assert {"intervention", "time", "interaction"} <= set(frame.columns)


class TestOracleCheckCommand:
    """Test suite for `clusterfx oracle-check`."""

    def test_passes(self, capsys):
        """The fast path agrees with the references."""
        assert main(["oracle-check", "--n", "10", "--seed", "3"]) == EXIT_OK
        assert "PASS" in capsys.readouterr().out

    def test_json_summary_reproducible(self, capsys):
        """The JSON summary depends only on the seed."""
        main(["oracle-check", "--n", "5", "--seed", "1", "--json"])
        first = capsys.readouterr().out
        main(["oracle-check", "--n", "5", "--seed", "1", "--json"])
        assert capsys.readouterr().out == first
        summary = json.loads(first)
        assert summary["max_w_deviation"] <= 1e-12
        assert summary["max_v_deviation"] <= 1e-10
