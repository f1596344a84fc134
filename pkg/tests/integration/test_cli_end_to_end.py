"""End-to-end tests for the sreuse CLI."""

import json
from pathlib import Path

import pytest

import stablereuse.cli as sreuse_cli
from stablereuse.cli import main
from stablereuse.generators import load_instance
from stablereuse.harness.export import trace_digest


@pytest.mark.integration
def test_gen_writes_instance_and_is_deterministic(tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    argv = ["gen", "-L", "6", "-S", "3", "--profile", "utility_shannon", "--seed", "42"]
    assert main(argv + ["-o", str(first)]) == 0
    assert main(argv + ["-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    document = json.loads(first.read_text())
    assert document["L"] == 6 and document["S"] == 3
    assert "utility" in document


@pytest.mark.integration
def test_gen_to_stdout(capsys):
    assert main(["gen", "-L", "4", "-S", "2", "--graph", "empty", "--seed", "1"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["constraints"] == []
    assert "ranking" in document


@pytest.mark.integration
def test_seed_defaults_to_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SREUSE_SEED", "42")
    from_env = tmp_path / "env.json"
    explicit = tmp_path / "explicit.json"
    assert main(["gen", "-L", "5", "-S", "3", "-o", str(from_env)]) == 0
    assert main(["gen", "-L", "5", "-S", "3", "--seed", "42", "-o", str(explicit)]) == 0
    assert from_env.read_bytes() == explicit.read_bytes()


@pytest.mark.integration
def test_solve_dssar_to_stdout(instance_file, capsys):
    assert main(["solve", str(instance_file), "--alg", "dssar"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result == {"assignment": [1, 2], "algorithm": "dssar", "stable": True, "harmonious": True}


@pytest.mark.integration
def test_solve_then_verify_stable(instance_file, tmp_path, capsys):
    matching = tmp_path / "matching.json"
    assert main(["solve", str(instance_file), "--alg", "dssar", "-o", str(matching)]) == 0
    assert main(["verify", str(instance_file), str(matching)]) == 0
    out = capsys.readouterr().out
    assert "admissible: yes" in out
    assert "stable: yes" in out


@pytest.mark.integration
def test_solve_rpr_reports_passes(tmp_path, capsys):
    instance = tmp_path / "ranking.json"
    assert main(["gen", "-L", "5", "-S", "3", "--graph", "empty", "--seed", "3", "-o", str(instance)]) == 0
    assert main(["solve", str(instance), "--alg", "rpr", "-T", "1"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["algorithm"] == "rpr"
    assert result["iterations"] == 1
    assert result["stable"] is True


@pytest.mark.integration
def test_verify_blocking_pair_exits_one(instance_file, tmp_path, capsys):
    matching = tmp_path / "matching.json"
    matching.write_text(json.dumps({"assignment": [2, 1]}))
    assert main(["verify", str(instance_file), str(matching)]) == 1
    out = capsys.readouterr().out
    assert "stable: no" in out
    assert "witness: blocking pair (cell 1, channel 1)" in out


@pytest.mark.integration
def test_verify_non_total_matching_is_an_error(instance_file, tmp_path, capsys):
    matching = tmp_path / "matching.json"
    matching.write_text(json.dumps({"assignment": [1]}))
    assert main(["verify", str(instance_file), str(matching)]) == 1
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "ValidationError"
    assert "not total" in error["message"]


@pytest.mark.integration
def test_missing_instance_reports_json_error(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "missing.json"), "--alg", "random"]) == 1
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "FileNotFoundError"


@pytest.mark.integration
def test_wrong_profile_kind_reports_json_error(tmp_path, capsys):
    instance = tmp_path / "ranking.json"
    assert main(["gen", "-L", "3", "-S", "2", "--seed", "1", "-o", str(instance)]) == 0
    assert main(["solve", str(instance), "--alg", "dssar"]) == 1
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "InvalidArgumentError"


@pytest.mark.integration
def test_simulate_writes_trace_csv(instance_file, tmp_path):
    trace = tmp_path / "trace.csv"
    final = tmp_path / "final.json"
    assert main(["simulate", str(instance_file), "-o", str(trace), "--matching-output", str(final)]) == 0
    digest = trace_digest(load_instance(instance_file), "carrier_sense", 0.0)
    assert trace.read_text().splitlines() == [
        f"# stablereuse-csv v1 config-sha256={digest}",
        "time,kind,cell,channel",
        "0.20000000000000001,transmit,1,1",
        "0.20000000000000001,sense-busy,2,1",
    ]
    assert json.loads(final.read_text()) == {"assignment": [1, 2], "mode": "carrier_sense"}


@pytest.mark.integration
def test_simulate_messages_mode_to_stdout(instance_file, capsys):
    assert main(["simulate", str(instance_file), "--mode", "messages"]) == 0
    lines = capsys.readouterr().out.splitlines()
    digest = trace_digest(load_instance(instance_file), "control_messages", 0.0)
    assert lines[0] == f"# stablereuse-csv v1 config-sha256={digest}"
    assert lines[1] == "time,kind,cell,channel"
    assert lines[-1] == "0.20000000000000001,control-message,2,1"


@pytest.mark.integration
def test_experiment_writes_four_csvs(small_experiment_dict, tmp_path, capsys):
    config_path = tmp_path / "experiment.json"
    config_path.write_text(json.dumps(small_experiment_dict))
    out_dir = tmp_path / "override"
    assert main(["experiment", "--config", str(config_path), "--trials", "3",
                 "--output-dir", str(out_dir)]) == 0
    printed = capsys.readouterr().out
    for name in ("trials.csv", "by_L.csv", "by_S.csv", "summary.csv"):
        assert (out_dir / name).exists()
        assert name in printed
    rows = (out_dir / "trials.csv").read_text().splitlines()
    assert len(rows) == 2 + 3 * 5


@pytest.mark.integration
def test_experiment_show_config(small_experiment_dict, tmp_path, capsys):
    config_path = tmp_path / "experiment.json"
    config_path.write_text(json.dumps(small_experiment_dict))
    assert main(["experiment", "-c", str(config_path), "--seed", "99", "--show-config"]) == 0
    shown = json.loads(capsys.readouterr().out)
    assert shown["seed"] == 99
    assert not Path(small_experiment_dict["output_path"]).exists()


@pytest.mark.integration
def test_experiment_config_error(small_experiment_dict, tmp_path, capsys):
    small_experiment_dict["l_range"] = [20, 30]
    config_path = tmp_path / "experiment.json"
    config_path.write_text(json.dumps(small_experiment_dict))
    assert main(["experiment", "-c", str(config_path)]) == 1
    error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert error["error"] == "ConfigError"
    assert "oracle_cap" in error["message"]


@pytest.mark.integration
def test_counterexample_command(tmp_path, capsys):
    output = tmp_path / "counterexample.json"
    assert main(["counterexample", "-o", str(output)]) == 0
    assert "of 1024 graphs admit no stable matching" in capsys.readouterr().out
    report = json.loads(output.read_text())
    assert report["graphs_checked"] == 1024
    assert report["unsolvable_graphs"]
    assert len(report["refutation"]["assignments"]) == 243


@pytest.mark.integration
def test_list_algorithms(capsys):
    assert main(["--list-algorithms"]) == 0
    out = capsys.readouterr().out
    assert "best-of-random" in out
    assert "gale-shapley" in out


@pytest.mark.integration
def test_no_command_is_a_usage_error(capsys):
    assert main([]) == 2
    assert "command is required" in capsys.readouterr().err


@pytest.mark.integration
@pytest.mark.parametrize("argv", [
    ["solve", "x.json", "--alg", "dssar", "--bogus"],
    ["gen", "-L", "3"],
    ["solve", "x.json", "--alg", "hungarian"],
    ["gen", "-L", "3", "-S", "2", "--seed", "-1"],
])
def test_usage_errors_exit_two(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


@pytest.mark.integration
def test_commands_table_covers_subcommands():
    assert set(sreuse_cli.COMMANDS) == {"gen", "solve", "verify", "simulate", "experiment", "counterexample"}
