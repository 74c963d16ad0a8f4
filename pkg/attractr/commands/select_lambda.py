"""Choose the feature loss weight from a sweep over lambda.

The chosen lambda has the lowest validation feature loss among the runs whose
validation rMSE stays within `RMSE_TOLERANCE` of the lambda = 0 run.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from attractr import error
from attractr.cli.exit_codes import EXIT_SUCCESS
from attractr.commands.sweep import DATASET_DIR
from attractr.config import Config
from attractr.emulator import RunSummary
from attractr.error.exc import ConfigurationError
from attractr.util import read_json

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path


RMSE_TOLERANCE = 1.1


def lambda_of(summary: RunSummary) -> float:
    """The run's lambda, a run without the feature term counts as lambda = 0."""
    return summary.lambda_ if summary.lambda_ is not None else 0.0


def read_sweep(sweep_dir: Path) -> list[RunSummary]:
    """Return the run summaries of the sweep's run directories.

    Run directories without a summary (e.g. diverged runs) are skipped with an
    error, fatal under `--strict`.
    """
    if not sweep_dir.is_dir():
        raise ConfigurationError(f"sweep directory {str(sweep_dir)!r} does not exist")

    summaries: list[RunSummary] = []
    for run_dir in sorted(p for p in sweep_dir.iterdir() if p.is_dir()):
        if run_dir.name == DATASET_DIR:
            continue

        summary_file = run_dir / Config.RUN_SUMMARY_FILE
        if not summary_file.is_file():
            error.error(f"{run_dir} has no {Config.RUN_SUMMARY_FILE}, skipped")
            continue

        summaries.append(read_json(summary_file, type=RunSummary))

    return summaries


def select_lambda(
    summaries: Sequence[RunSummary], *, tolerance: float = RMSE_TOLERANCE
) -> float:
    """Return the lambda with the lowest feature loss within the rMSE bar.

    Ties go to the smaller lambda. When no run with lambda > 0 stays within the
    bar, 0 is returned with a warning.
    """
    baselines = [s for s in summaries if lambda_of(s) == 0]
    if not baselines:
        raise ConfigurationError("the sweep has no lambda = 0 run to compare against")

    bar = tolerance * min(s.val_rmse for s in baselines)

    feasible = [
        s
        for s in summaries
        if s.val_rmse <= bar
        and s.val_feature is not None
        and math.isfinite(s.val_feature)
    ]
    if not any(lambda_of(s) > 0 for s in feasible):
        error.warning(
            f"no run with lambda > 0 has validation rmse within {bar:.4g}, "
            "choosing lambda = 0"
        )
        return 0.0

    best = min(feasible, key=lambda s: (s.val_feature, lambda_of(s)))
    return lambda_of(best)


def run(config: Config) -> int:
    sweep_dir = config.arguments.sweep_dir
    if sweep_dir is None:
        raise ConfigurationError("select-lambda needs the sweep directory")

    chosen = select_lambda(read_sweep(sweep_dir))
    error.attractr(f"selected lambda {chosen:g} from {sweep_dir}")
    print(f"{chosen:g}")

    return EXIT_SUCCESS
