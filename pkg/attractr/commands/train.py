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
from attractr.emulator.train import train_emulator
from attractr.encoder import load_encoder
from attractr.error.exc import ConfigurationError
from attractr.losses import Objective

if TYPE_CHECKING:
    from attractr.config import Config
    from attractr.emulator.train import TrainingResult
    from attractr.encoder import EncoderModel


def _load_feature_encoder(experiment: ExperimentConfig) -> EncoderModel | None:
    if experiment.loss.objective != Objective.feature:
        return None

    if experiment.encoder.encoder is None:
        raise ConfigurationError(
            "the feature objective needs a trained encoder, see --encoder"
        )

    return load_encoder(resolve_checkpoint(experiment.encoder.encoder))


def train(experiment: ExperimentConfig) -> TrainingResult:
    """Train the experiment's emulator into its run directory."""
    output = prepare_run_directory(
        experiment.output.output, force=experiment.output.force
    )
    set_precision(experiment.model.precision)

    encoder = _load_feature_encoder(experiment)
    train_set = load_split(experiment, Split.train)
    validation = load_split(experiment, Split.val)

    write_experiment_config(experiment, output)

    return train_emulator(
        train_set,
        experiment.emulator_config(),
        experiment.emulator_training(),
        output=output,
        validation=validation,
        encoder=encoder,
    )


def run(config: Config) -> int:
    experiment = ExperimentConfig.from_arguments(config.arguments)
    summary = train(experiment).summary

    error.attractr(
        f"{summary.objective} emulator, best epoch {summary.best_epoch} of "
        f"{summary.epochs}, validation rmse {summary.val_rmse:.4f} "
        f"-> {experiment.output.output}"
    )

    return EXIT_SUCCESS
