import json

import pytest

from entropovm.cli import main


def test_list_scenarios(capsys):
    assert main(["scenarios"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "fuzz-theorem1" in payload["scenarios"]


def test_run_writes_json_report(tmp_path):
    out = tmp_path / "report.json"
    code = main(
        ["run", "mub", "--dim", "2", "--trials", "5", "--seed", "3", "--out", str(out)]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert list(payload) == ["scenario", "config", "records", "aggregate", "timing_ms"]
    assert payload["scenario"] == "mub"
    assert payload["aggregate"]["failed"] == 0


def test_run_writes_csv(tmp_path):
    out = tmp_path / "report.csv"
    code = main(
        ["run", "sphere", "--seed", "1", "--out", str(out), "--format", "csv"]
    )
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("scenario,index,label")
    assert len(lines) > 1


def test_run_prints_to_stdout(capsys):
    assert main(["run", "tensor-equality", "--trials", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["scenario"] == "tensor-equality"


def test_exit_code_one_on_failure():
    # an absurdly tight tolerance turns the equality-case rounding into failures
    assert main(["run", "tensor-equality", "--trials", "2", "--tolerance", "1e-300"]) == 1


def test_unknown_scenario_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["run", "not-a-scenario"])
    assert exc.value.code == 2


def test_invalid_config_exits_two(capsys):
    assert main(["run", "mub", "--dim", "-3"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["run", "hermite", "--t", "-1.0"]) == 2
    assert main(["run", "landau", "--B", "-2.0"]) == 2


def test_cli_determinism_modulo_timing(tmp_path):
    files = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert (
            main(["run", "fuzz-theorem1", "--trials", "10", "--seed", "42", "--out", str(out)])
            == 0
        )
        files.append(out)
    payloads = [json.loads(f.read_text()) for f in files]
    for p in payloads:
        p.pop("timing_ms")
    assert json.dumps(payloads[0]) == json.dumps(payloads[1])
