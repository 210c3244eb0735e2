from __future__ import annotations

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from cherednik_cli.commands import HANDLERS
from cherednik_cli.config import CliSettings, RunConfig
from cherednik_cli.jobs.sweep import build_tasks, run_sweep
from cherednik_cli.main import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_REJECTED,
    attach_vector_values,
    main,
)
from cherednik_core.schemas import ClaimRecord, RunReport
from cherednik_core.services import CollectingSink, VerificationRunner

SETTINGS = CliSettings(log_level="WARNING")


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict]:
    code = main(list(argv), settings=SETTINGS)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else {}


def test_negative_vectors_are_attached() -> None:
    assert attach_vector_values(["order", "--theta", "-2,1,1", "--l", "3"]) == [
        "order",
        "--theta=-2,1,1",
        "--l",
        "3",
    ]


def test_order_command(capsys: pytest.CaptureFixture[str]) -> None:
    code, payload = _run(capsys, "order", "--l", "3", "--theta", "-2,1,1")

    assert code == EXIT_OK
    assert payload["ok"] is True
    assert payload["schema"] == 1
    assert payload["data"]["eta"] == [1, 2, 0]
    assert payload["data"]["order"] == "0>2>1"


def test_homs_command(capsys: pytest.CaptureFixture[str]) -> None:
    code, payload = _run(capsys, "homs", "--lambda", "-1,2")

    assert code == EXIT_OK
    assert payload["data"] == {"(0,1)": {"dim": 1, "p": 3, "n": 1, "simple": 3}}


def test_abl_command(capsys: pytest.CaptureFixture[str]) -> None:
    code, payload = _run(capsys, "abl-verify", "--theta", "-1,1", "--m", "1", "--window", "15")

    assert code == EXIT_OK
    assert payload["data"]["equal"] is True


def test_regime_violation_is_rejected(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["shift-verify", "--lambda", "-1,2", "--theta", "1,-1"], settings=SETTINGS)

    captured = capsys.readouterr()
    assert code == EXIT_REJECTED
    assert captured.out == ""
    assert "regime rejected" in captured.err


def test_bad_theta_is_rejected(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["order", "--theta", "1,1"], settings=SETTINGS)

    assert code == EXIT_REJECTED
    assert "invalid input" in capsys.readouterr().err


def test_rank_mismatch_is_rejected(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["order", "--l", "3", "--theta", "-1,1"], settings=SETTINGS)

    assert code == EXIT_REJECTED
    capsys.readouterr()


def test_failed_claim_sets_exit_code(
    capsys: pytest.CaptureFixture[str],
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    def failing(runner: VerificationRunner, config: RunConfig) -> RunReport:
        claim = ClaimRecord.check("always fails", False, {"theta": list(config.theta or ())})
        return RunReport(command=config.command, claims=[claim])

    monkeypatch.setitem(HANDLERS, "order", failing)

    code = main(["order", "--theta", "-1,1"], settings=SETTINGS)

    captured = capsys.readouterr()
    assert code == EXIT_FAILED
    assert json.loads(captured.out)["ok"] is False
    assert "провалено 1" in captured.err
    assert "- always fails" in captured.err


def test_out_file_is_reproducible(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    argv = ["charts", "--theta", "-2,1,1", "--out"]

    assert main([*argv, str(first)], settings=SETTINGS) == EXIT_OK
    assert main([*argv, str(second)], settings=SETTINGS) == EXIT_OK

    assert capsys.readouterr().out == ""
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text(encoding="utf-8"))["command"] == "charts"


def test_run_config_validation() -> None:
    with pytest.raises(ValidationError):
        RunConfig(command="sweep", l=2)
    with pytest.raises(ValidationError):
        RunConfig(command="sections", theta=(-1, 1), cap=(0, 3))
    with pytest.raises(ValidationError):
        RunConfig(command="homs", lam=("1/2", "1/3"))

    config = RunConfig(command="homs", lam=("-1", "2"), depth=12)
    assert config.rank == 2
    assert config.params() == {
        "command": "homs",
        "lam": ["-1", "2"],
        "m": 1,
        "cap": [6, 6],
        "window": 15,
        "depth": 12,
        "top": 10,
        "samples": 5,
    }


def test_missing_parameter_is_reported() -> None:
    config = RunConfig(command="homs", l=2)

    with pytest.raises(ValueError):
        config.deform_param()


def test_sweep_tasks_cover_every_alcove() -> None:
    config = RunConfig(command="sweep", l=2, seed=7, m=0, samples=1, cap=(3, 3))
    runner = VerificationRunner(CollectingSink())

    labels = [label for label, _ in build_tasks(runner, config)]

    assert len(labels) == 19
    assert len(set(labels)) == len(labels)
    assert labels[-1] == "homs sample 0"


def test_sweep_is_seeded() -> None:
    config = RunConfig(command="sweep", l=2, seed=3, m=0, samples=1, cap=(3, 3), threads=2)

    first = run_sweep(VerificationRunner(CollectingSink()), config)
    second = run_sweep(VerificationRunner(CollectingSink()), config)

    assert first.command == "sweep"
    assert len(first.data) == 19
    assert first.to_json() == second.to_json()


def test_engine_error_becomes_failing_report(
    capsys: pytest.CaptureFixture[str],
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    def broken(runner: VerificationRunner, config: RunConfig) -> RunReport:
        raise RuntimeError("Weight bookkeeping violated in theta_map: expected [0, 0]")

    monkeypatch.setitem(HANDLERS, "charts", broken)

    code = main(["charts", "--theta", "-1,1"], settings=SETTINGS)

    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert code == EXIT_FAILED
    assert payload["ok"] is False
    assert payload["params"]["theta"] == [-1, 1]
    assert payload["claims"][0]["witness"] == {
        "error": "Weight bookkeeping violated in theta_map: expected [0, 0]",
    }
    assert "- computation completed" in captured.err


def test_sweep_checks_integer_regular_lambda() -> None:
    config = RunConfig(command="sweep", l=2, seed=7, m=0, samples=1, cap=(3, 3))
    runner = VerificationRunner(CollectingSink())

    labels = [label for label, _ in build_tasks(runner, config)]

    assert "shift-verify integral θ=-1,1" in labels
    assert "shift-verify integral θ=1,-1" in labels
    report = dict(build_tasks(runner, config))["shift-verify integral θ=-1,1"]()
    assert report.params["lambda"] == ["0", "1"]
    assert report.data["q-dimension"] is None
