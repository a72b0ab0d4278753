import pytest


@pytest.fixture
def config_file(base_config, tmp_path):
    from nsfg.harness.schema import dump_config, parse_config

    path = tmp_path / "config.yaml"
    dump_config(parse_config(base_config()), path)
    return path


def test_run_command(config_file, tmp_path):
    from nsfg.harness.cli import main

    assert main(["run", str(config_file), "--out", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out" / "diagnostics.csv").exists()


def test_run_with_missing_config_is_usage_error(tmp_path):
    from nsfg.harness.cli import main

    assert main(["run", str(tmp_path / "missing.yaml")]) == 2


def test_unknown_suite_is_usage_error(capsys):
    from nsfg.harness.cli import main

    assert main(["check", "unknown"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_empty_sweep_is_usage_error(config_file, tmp_path):
    from nsfg.harness.cli import main

    assert main(["sweep", str(config_file), "--axis", "eps", "--values", "", "--out", str(tmp_path / "s")]) == 2


def test_missing_subcommand_is_usage_error():
    from nsfg.harness.cli import main

    assert main([]) == 2


def test_check_prints_json_lines(mocker, capsys):
    """A failing property makes the command exit 1."""
    import json

    from nsfg.harness.checks import PropertyResult
    from nsfg.harness.cli import main

    results = [
        PropertyResult(suite="cutoffs", name="a", samples=3, worst_margin=0.0, passed=True),
        PropertyResult(suite="cutoffs", name="b", samples=3, worst_margin=2.0, passed=False),
    ]
    run_suite = mocker.patch("nsfg.harness.checks.run_suite", return_value=results)
    assert main(["check", "cutoffs"]) == 1
    run_suite.assert_called_once_with("cutoffs")
    lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [line["name"] for line in lines] == ["a", "b"]


def test_run_failure_reports_reason(mocker, config_file, capsys):
    from pathlib import Path

    from nsfg.harness.cli import main
    from nsfg.harness.runner import RunResult

    mocker.patch(
        "nsfg.harness.runner.run",
        return_value=RunResult(1, Path("."), reason="stability: hyper: dt too large"),
    )
    assert main(["run", str(config_file)]) == 1
    assert "hyper" in capsys.readouterr().err
