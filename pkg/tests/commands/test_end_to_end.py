from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from attractr.__main__ import main
from attractr.cli.parser import parse_arguments
from attractr.config import Config
from attractr.emulator import RunSummary
from attractr.error.exc import ConfigurationError
from attractr.metrics import (
    HISTOGRAM_FILE,
    REPORT_FILE,
    REPORT_META_FILE,
    EvalMetadata,
)
from attractr.util import read_json, read_rows

if TYPE_CHECKING:
    from collections.abc import Callable
    from pathlib import Path


SYSTEM = [
    "--kind", "lorenz96",
    "--dimension", "8",
    "--dt", "0.05",
    "--spinup-steps", "20",
    "--environments", "10",
    "--length", "63",
    "--noise", "0.1",
]  # fmt: skip

MODEL = [
    "--width", "4",
    "--blocks", "1",
    "--modes", "2",
    "--epochs", "1",
    "--steps-per-epoch", "2",
    "--batch-size", "2",
    "--warning-level", "none",
]  # fmt: skip


@pytest.fixture
def run_command(monkeypatch: pytest.MonkeyPatch) -> Callable[..., int]:
    def _inner(*sys_args: str) -> int:
        arguments = parse_arguments(sys_args=list(sys_args), exit_on_error=False)
        monkeypatch.setattr(Config(), "arguments", arguments)
        return main(Config())

    return _inner


@pytest.mark.slow
def test_generate_train_eval(tmp_path: Path, run_command):
    data = ["--dataset", str(tmp_path / "data")]
    output = ["--output", str(tmp_path / "run")]

    assert run_command("generate", *SYSTEM, *data) == 0
    assert (tmp_path / "data").is_dir()

    assert run_command("train", *SYSTEM, *MODEL, *data, *output) == 0
    summary = read_json(tmp_path / "run" / Config.RUN_SUMMARY_FILE, type=RunSummary)
    assert summary.objective == "rmse"
    assert summary.epochs == 1
    assert (tmp_path / "run" / Config.CHECKPOINT_DIR).is_dir()

    evaluation = ["--horizon", "40", "--rmse-horizon", "10"]
    assert run_command("eval", *SYSTEM, *MODEL, *data, *output, *evaluation) == 0
    assert read_rows(tmp_path / "run" / "eval" / REPORT_FILE)
    assert (tmp_path / "run" / "eval" / HISTOGRAM_FILE).is_file()


@pytest.mark.usefixtures("quiet")
def test_train_needs_a_dataset(tmp_path: Path, run_command):
    with pytest.raises(ConfigurationError):
        run_command(
            "train",
            *SYSTEM,
            *MODEL,
            "--dataset",
            str(tmp_path / "missing"),
            "--output",
            str(tmp_path / "run"),
        )


@pytest.mark.usefixtures("quiet")
def test_eval_the_simulator(tmp_path: Path, run_command):
    data = ["--dataset", str(tmp_path / "data")]
    evaluation = [
        "--stepper", "simulator",
        "--horizon", "40",
        "--rmse-horizon", "5",
        "--eval-stride", "10",
        "--output", str(tmp_path / "run"),
    ]  # fmt: skip

    assert run_command("generate", *SYSTEM, *data, "--warning-level", "none") == 0
    assert run_command("eval", *SYSTEM, *data, *evaluation) == 0

    output = tmp_path / "run" / "eval"
    metadata = read_json(output / REPORT_META_FILE, type=EvalMetadata)
    assert metadata.stepper == "simulator"
    assert metadata.dataset == tmp_path / "data"
    assert metadata.checkpoint is None
    assert read_rows(output / REPORT_FILE)


def _aggregate(run: Path, metric: str) -> float:
    rows = read_rows(run / "eval" / REPORT_FILE)
    return next(
        float(row["value"])
        for row in rows
        if int(row["env_id"]) == -1 and row["metric"] == metric
    )


@pytest.mark.slow
def test_structural_objectives_keep_the_statistics(tmp_path: Path, run_command):
    system = [
        "--kind", "lorenz96",
        "--environments", "20",
        "--length", "400",
        "--noise", "0.3",
        "--dataset", str(tmp_path / "data"),
        "--warning-level", "none",
    ]  # fmt: skip
    training = ["--epochs", "100", "--encoder-epochs", "100"]
    evaluation = ["--horizon", "300", "--rmse-horizon", "1"]

    assert run_command("generate", *system) == 0
    assert (
        run_command(
            "train-encoder", *system, *training, "--output", str(tmp_path / "encoder")
        )
        == 0
    )

    runs = {
        "rmse": [],
        "sinkhorn": [],
        "feature": ["--encoder", str(tmp_path / "encoder")],
    }
    for objective, extra in runs.items():
        output = ["--output", str(tmp_path / objective)]
        train = ["--objective", objective, *extra]

        assert run_command("train", *system, *training, *train, *output) == 0
        assert run_command("eval", *system, *train, *evaluation, *output) == 0

    baseline_rmse = _aggregate(tmp_path / "rmse", "rmse")
    baseline_histogram = _aggregate(tmp_path / "rmse", "histogram_error")

    for objective in ("sinkhorn", "feature"):
        run = tmp_path / objective
        assert _aggregate(run, "histogram_error") <= 0.75 * baseline_histogram
        assert _aggregate(run, "rmse") <= 1.15 * baseline_rmse
