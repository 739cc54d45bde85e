"""Tests for the command-line interface."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from swarmcomm.cli import cli, parse_sizes

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def runner():
    return CliRunner()


class TestPresetsCommand:
    def test_matches_checked_in_fixture(self, runner):
        result = runner.invoke(cli, ["presets"])
        assert result.exit_code == 0
        assert result.output == (FIXTURES / "presets_table.txt").read_text()


class TestRunCommand:
    def test_writes_artifacts_and_prints_table(self, runner, tmp_path):
        result = runner.invoke(cli, [
            "run", "--scenario", "simple", "--engine", "identity",
            "--trials", "2", "--seed", "5", "--out-dir", str(tmp_path / "out"),
        ])
        assert result.exit_code == 0, result.output
        assert "CR" in result.output and "SR" in result.output
        assert (tmp_path / "out" / "aggregate.csv").exists()
        assert (tmp_path / "out" / "trial_001.json").exists()

    def test_unknown_scenario_fails(self, runner, tmp_path):
        result = runner.invoke(cli, [
            "run", "--scenario", "mars", "--out-dir", str(tmp_path / "out"),
        ])
        assert result.exit_code != 0

    def test_config_file_overrides_flags(self, runner, tmp_path):
        config_file = tmp_path / "exp.cfg"
        config_file.write_text("scenario = simple\ntrials = 3\n")
        result = runner.invoke(cli, [
            "run", "--scenario", "extreme", "--trials", "9",
            "--out-dir", str(tmp_path / "out"), "--config", str(config_file),
        ])
        assert result.exit_code == 0, result.output
        record = json.loads((tmp_path / "out" / "trial_000.json").read_text())
        assert record["scenario"] == "simple"
        assert len(list((tmp_path / "out").glob("trial_*.json"))) == 3

    def test_unknown_config_key_fails(self, runner, tmp_path):
        config_file = tmp_path / "exp.cfg"
        config_file.write_text("scneario = simple\n")
        result = runner.invoke(cli, [
            "run", "--out-dir", str(tmp_path / "out"), "--config", str(config_file),
        ])
        assert result.exit_code != 0


class TestAblateCommands:
    def test_ablate_complexity_writes_heatmap(self, runner, tmp_path):
        result = runner.invoke(cli, [
            "ablate-complexity", "--trials", "1",
            "--out-dir", str(tmp_path / "heat"),
        ])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "heat" / "heatmap.csv").exists()
        assert "global SR" in result.output
        for name in ("simple", "standard", "complex", "extreme"):
            assert (tmp_path / "heat" / name / "aggregate.csv").exists()

    def test_ablate_size_writes_sizes_table(self, runner, tmp_path):
        result = runner.invoke(cli, [
            "ablate-size", "--sizes", "2,3", "--trials", "1",
            "--out-dir", str(tmp_path / "sweep"),
        ])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "sweep" / "sizes.csv").exists()
        assert (tmp_path / "sweep" / "size_02" / "aggregate.json").exists()


class TestParseSizes:
    def test_range(self):
        assert parse_sizes("2-5") == [2, 3, 4, 5]

    def test_list(self):
        assert parse_sizes("8,2,4") == [2, 4, 8]

    def test_mixed_with_duplicates(self):
        assert parse_sizes("2-4,3,16") == [2, 3, 4, 16]
