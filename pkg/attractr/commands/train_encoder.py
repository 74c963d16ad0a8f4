from __future__ import annotations

from typing import TYPE_CHECKING

from attractr import error
from attractr.cli.exit_codes import EXIT_SUCCESS
from attractr.commands._util import (
    load_split,
    prepare_run_directory,
    write_experiment_config,
)
from attractr.config.experiment import ExperimentConfig
from attractr.datastore import Split
from attractr.diffcore import set_precision
from attractr.encoder import save_encoder, train_encoder

if TYPE_CHECKING:
    from attractr.config import Config


def run(config: Config) -> int:
    experiment = ExperimentConfig.from_arguments(config.arguments)
    output = prepare_run_directory(
        experiment.output.output, force=experiment.output.force
    )
    set_precision(experiment.model.precision)
    write_experiment_config(experiment, output)

    model, rows = train_encoder(
        load_split(experiment, Split.train),
        experiment.encoder_config(),
        experiment.encoder_training(),
        validation=load_split(experiment, Split.val),
        log_path=output / config.TRAINING_LOG_FILE,
    )
    save_encoder(model, output / config.CHECKPOINT_DIR)

    top1 = next((row.top1 for row in reversed(rows) if row.top1 is not None), None)
    error.attractr(
        f"encoder trained for {len(rows)} epochs on windows of "
        f"{experiment.encoder_window + 1} states, final top1 accuracy "
        f"{top1 if top1 is not None else float('nan'):.3f} -> {output}"
    )

    return EXIT_SUCCESS
