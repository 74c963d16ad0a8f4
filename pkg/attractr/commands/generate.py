from __future__ import annotations

from typing import TYPE_CHECKING

from attractr import datastore, error
from attractr.cli.exit_codes import EXIT_SUCCESS
from attractr.commands._util import prepare_run_directory
from attractr.config.experiment import ExperimentConfig

if TYPE_CHECKING:
    from attractr.config import Config
    from attractr.datastore import Dataset


def generate(experiment: ExperimentConfig, *, workers: int = 1) -> Dataset:
    """Generate the experiment's dataset and write it to its dataset directory."""
    path = prepare_run_directory(
        experiment.data.dataset, force=experiment.output.force
    )

    dataset = datastore.generate_dataset(
        experiment.system_spec(),
        count=experiment.environments.count,
        phi_range=experiment.environments.phi_range,
        T=experiment.data.length,
        r=experiment.data.noise,
        env_seed=experiment.environments.env_seed,
        data_seed=experiment.data.data_seed,
        split=experiment.environments.split,
        workers=workers,
    )
    datastore.save(dataset, path)

    return dataset


def run(config: Config) -> int:
    experiment = ExperimentConfig.from_arguments(config.arguments)
    dataset = generate(experiment, workers=config.arguments.workers or 1)

    splits = ", ".join(
        f"{len(dataset.subset(split))} {split}" for split in datastore.Split
    )
    shape = [dataset.length + 1, experiment.system.dimension]
    error.attractr(
        f"{len(dataset)} {experiment.system.kind} environments ({splits}) of "
        f"shape {shape}, r={experiment.data.noise}, "
        f"seeds {experiment.environments.env_seed}/{experiment.data.data_seed} "
        f"-> {experiment.data.dataset}"
    )

    return EXIT_SUCCESS
