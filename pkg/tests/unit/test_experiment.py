"""Unit tests for the experiment pipeline and CSV export."""

import io

import pytest
from pathlib import Path

import numpy as np
import pandas as pd

# Add parent directory to path
import sys
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from stablereuse.core.config import ExperimentConfig
from stablereuse.core.errors import ConfigError
from stablereuse.harness.experiment import (
    CSV_FILES, SUMMARY_COLUMNS, TRIAL_COLUMNS, run_experiment, run_trial, trial_instance,
)
from stablereuse.harness.export import csv_header, read_csv, trace_digest, write_csv, write_trace
from stablereuse.simulation import simulate_csma


class TestExport:
    def test_header_line(self, tmp_path):
        path = write_csv(pd.DataFrame({"a": [1], "b": [0.1]}), tmp_path / "x.csv", "abc")
        lines = path.read_text().splitlines()
        assert lines[0] == "# stablereuse-csv v1 config-sha256=abc"
        assert lines[1] == "a,b"
        assert lines[2] == "1,0.10000000000000001"
        assert csv_header("abc").endswith("\n")

    def test_read_skips_header(self, tmp_path):
        path = write_csv(pd.DataFrame({"a": [1, 2]}), tmp_path / "nested" / "x.csv", "d")
        assert read_csv(path)["a"].tolist() == [1, 2]


class TestTraceExport:
    def test_stream_gets_header_and_rows(self, edge_utility_instance):
        trace = simulate_csma(edge_utility_instance)
        digest = trace_digest(edge_utility_instance, trace.mode, 0.0)
        buffer = io.StringIO()
        write_trace(trace, buffer, digest)
        assert buffer.getvalue().splitlines() == [
            f"# stablereuse-csv v1 config-sha256={digest}",
            "time,kind,cell,channel",
            "0.20000000000000001,transmit,1,1",
            "0.20000000000000001,sense-busy,2,1",
        ]

    def test_file_matches_stream(self, edge_utility_instance, tmp_path):
        trace = simulate_csma(edge_utility_instance, "messages")
        buffer = io.StringIO()
        write_trace(trace, buffer, "d")
        path = tmp_path / "traces" / "t.csv"
        write_trace(trace, path, "d")
        assert path.read_text() == buffer.getvalue()
        assert read_csv(path)["kind"].tolist() == ["transmit", "control-message"]

    def test_digest_tracks_settings(self, edge_utility_instance, five_cell):
        base = trace_digest(edge_utility_instance, "carrier_sense", 0.0)
        assert base == trace_digest(edge_utility_instance, "carrier_sense", 0.0)
        assert len(base) == 64
        assert base != trace_digest(edge_utility_instance, "control_messages", 0.0)
        assert base != trace_digest(edge_utility_instance, "carrier_sense", 0.1)
        assert base != trace_digest(five_cell, "carrier_sense", 0.0)


class TestRunTrial:
    @pytest.fixture
    def config(self, small_experiment_dict):
        return ExperimentConfig.from_dict(small_experiment_dict)

    def test_deterministic(self, config):
        first = run_trial(config, 3)
        second = run_trial(config, 3)
        strip = lambda records: [r.to_row() for r in records]
        assert strip(first) == strip(second)

    def test_sizes_within_ranges(self, config):
        for index in range(config.trials):
            instance = trial_instance(config, index)
            assert 3 <= instance.num_cells <= 5
            assert 2 <= instance.num_channels <= 3

    def test_one_record_per_algorithm(self, config):
        records = run_trial(config, 0)
        assert [r.algorithm for r in records] == config.algorithms
        assert all(r.harmonious for r in records)

    def test_rpr_reports_passes(self, config):
        record = run_trial(config, 1)[0]
        assert record.algorithm == "rpr"
        assert record.iterations >= 1
        assert record.converged in (True, False)
        if record.converged:
            assert record.stable

    def test_optimal_dominates(self, config):
        for index in range(config.trials):
            by_name = {r.algorithm: r for r in run_trial(config, index)}
            best = by_name["optimal"].total_welfare
            assert all(r.total_welfare <= best + 1e-12 for r in by_name.values())

    def test_wall_time_only_with_timing(self, config):
        record = run_trial(config, 0)[0]
        assert "wall_time" not in record.to_row()
        assert record.to_row(with_timing=True)["wall_time"] >= 0.0


class TestRunExperiment:
    @pytest.fixture
    def report(self, small_experiment_dict):
        return run_experiment(ExperimentConfig.from_dict(small_experiment_dict))

    def test_writes_four_files(self, report, small_experiment_dict):
        out = Path(small_experiment_dict["output_path"])
        assert set(report.paths) == set(CSV_FILES)
        for name in CSV_FILES.values():
            text = (out / name).read_text()
            assert text.startswith(f"# stablereuse-csv v1 config-sha256={report.digest}\n")

    def test_trials_table(self, report):
        assert list(report.trials.columns) == TRIAL_COLUMNS
        assert len(report.trials) == 12 * 5
        assert report.trials["harmonious"].all()
        assert report.trials["sum_rate"].isna().all()

    def test_summary_means_match_trials(self, report):
        for algorithm, group in report.trials.groupby("algorithm"):
            row = report.summary_row(algorithm)
            assert row["trials"] == 12
            assert row["mean_total_welfare"] == pytest.approx(group["total_welfare"].mean())
            assert row["stable_rate"] == pytest.approx(group["stable"].mean())

    def test_summary_columns_and_order(self, report):
        assert list(report.summary.columns) == SUMMARY_COLUMNS
        assert report.summary["algorithm"].tolist() == ["rpr", "random", "best_of_random", "top_ranked", "optimal"]

    def test_ratio_to_optimal(self, report):
        assert report.summary_row("optimal")["ratio_to_optimal"] == pytest.approx(1.0)
        assert (report.summary["ratio_to_optimal"] <= 1.0 + 1e-12).all()

    def test_non_convergence_only_for_rpr(self, report):
        assert np.isnan(report.summary_row("random")["non_convergence_rate"])
        assert 0.0 <= report.summary_row("rpr")["non_convergence_rate"] <= 1.0

    def test_by_l_partitions_trials(self, report):
        assert set(report.by_l["L"]) <= {3, 4, 5}
        rpr_rows = report.by_l[report.by_l["algorithm"] == "rpr"]
        assert rpr_rows["trials"].sum() == 12

    def test_summary_row_unknown(self, report):
        with pytest.raises(KeyError):
            report.summary_row("dssar")


class TestConfigErrors:
    def test_invalid_config_fails_before_trials(self, small_experiment_dict, mocker):
        small_experiment_dict["algorithms"] = ["dssar"]
        spy = mocker.patch("stablereuse.harness.experiment.run_trial")
        with pytest.raises(ConfigError):
            run_experiment(ExperimentConfig.from_dict(small_experiment_dict))
        spy.assert_not_called()
        assert not Path(small_experiment_dict["output_path"]).exists()

    def test_no_write(self, small_experiment_dict):
        small_experiment_dict["trials"] = 2
        report = run_experiment(ExperimentConfig.from_dict(small_experiment_dict), write=False)
        assert report.paths == {}
        assert not Path(small_experiment_dict["output_path"]).exists()
