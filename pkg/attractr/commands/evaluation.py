from __future__ import annotations

from typing import TYPE_CHECKING

from attractr import error
from attractr.cli.exit_codes import EXIT_SUCCESS
from attractr.commands._util import (
    load_split,
    prepare_run_directory,
    resolve_checkpoint,
    write_experiment_config,
)
from attractr.config.experiment import ExperimentConfig
from attractr.datastore import Split
from attractr.diffcore import set_precision
from attractr.emulator import SimulatorStepper, ZeroStepper, load_emulator
from attractr.metrics import (
    HISTOGRAM_ERROR,
    HISTOGRAM_FILE,
    NOISY_HISTOGRAM_ERROR,
    RMSE,
    SPECTRUM_ERROR,
    EvalMetadata,
    evaluate,
    export_histograms,
    write_eval_report,
)

if TYPE_CHECKING:
    from pathlib import Path

    from attractr.config import Config
    from attractr.emulator import Stepper


EVAL_DIR = "eval"
"""Evaluations are written below the run directory, next to its checkpoint."""


def make_stepper(
    experiment: ExperimentConfig, stepper: str, checkpoint: Path | None
) -> tuple[Stepper, Path | None]:
    if stepper == "simulator":
        return SimulatorStepper(experiment.system_spec()), None
    if stepper == "zero":
        return ZeroStepper(), None

    checkpoint = resolve_checkpoint(checkpoint or experiment.output.output)
    model = load_emulator(checkpoint)
    model.eval()

    return model, checkpoint


def run(config: Config) -> int:
    arguments = config.arguments
    experiment = ExperimentConfig.from_arguments(arguments)
    set_precision(experiment.model.precision)

    stepper, checkpoint = make_stepper(
        experiment, arguments.stepper, arguments.checkpoint
    )
    test_set = load_split(experiment, Split.test)

    metadata = EvalMetadata(
        stepper=arguments.stepper,
        horizon=experiment.evaluation.horizon,
        rmse_horizon=experiment.evaluation.rmse_horizon,
        dataset=experiment.data.dataset,
        checkpoint=checkpoint,
        seed=experiment.training.seed,
        noise_scale=experiment.data.noise,
    )
    report = evaluate(
        stepper, test_set, metadata, stride=experiment.evaluation.stride
    )

    output = prepare_run_directory(
        experiment.output.output / EVAL_DIR, force=experiment.output.force
    )
    write_experiment_config(experiment, output)
    write_eval_report(report, output)
    export_histograms(
        stepper, test_set, experiment.evaluation.horizon, output / HISTOGRAM_FILE
    )

    metrics = ", ".join(
        f"{name} {report.value(name):.4g}"
        for name in (RMSE, HISTOGRAM_ERROR, NOISY_HISTOGRAM_ERROR, SPECTRUM_ERROR)
    )
    error.attractr(
        f"{arguments.stepper} on {len(test_set)} test environments: {metrics} "
        f"-> {output}"
    )

    return EXIT_SUCCESS
