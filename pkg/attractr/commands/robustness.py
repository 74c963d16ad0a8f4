from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from attractr import error
from attractr.cli.exit_codes import EXIT_SUCCESS
from attractr.commands._util import prepare_run_directory, write_experiment_config
from attractr.config.experiment import ExperimentConfig
from attractr.metrics import noise_robustness_sweep

if TYPE_CHECKING:
    from attractr.config import Config


ROBUSTNESS_FILE = "robustness.csv"


def run(config: Config) -> int:
    experiment = ExperimentConfig.from_arguments(config.arguments)
    output = prepare_run_directory(
        experiment.output.output, force=experiment.output.force
    )
    write_experiment_config(experiment, output)

    phi = float(np.mean(experiment.environments.phi_range))
    rows = noise_robustness_sweep(
        experiment.system_spec(),
        phi,
        experiment.evaluation.r_grid,
        experiment.evaluation.robustness_horizons,
        seeds=experiment.evaluation.robustness_seeds,
        seed=experiment.data.data_seed,
        measurement_noise=experiment.evaluation.measurement_noise,
        path=output / ROBUSTNESS_FILE,
    )

    largest = max(row.r for row in rows)
    longest = max(row.horizon for row in rows)
    worst = [row for row in rows if row.r == largest and row.horizon == longest]
    error.attractr(
        f"phi={phi:g}, r up to {largest:g} over {longest} steps: rmse "
        f"{np.mean([row.rmse for row in worst]):.3f}, histogram error "
        f"{np.mean([row.histogram_error for row in worst]):.4f} "
        f"-> {output / ROBUSTNESS_FILE}"
    )

    return EXIT_SUCCESS
