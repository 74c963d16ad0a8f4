"""Run the train command once per value of a float setting.

Each value gets its own run directory `<output>/<key>=<value>`. Settings which
change the data (e.g. `noise`) first regenerate a dataset per value, under
`<output>/data/<key>=<value>`.
"""

from __future__ import annotations

import copy
from concurrent.futures import ProcessPoolExecutor
from typing import TYPE_CHECKING

import attrs

from attractr import error
from attractr.cli._types import TomlArgumentType
from attractr.cli.exit_codes import EXIT_SUCCESS
from attractr.cli.parser import TOML_ARGUMENT_TYPE_MAP
from attractr.commands._util import prepare_run_directory
from attractr.commands.generate import generate
from attractr.commands.train import train
from attractr.config import Config
from attractr.config.experiment import ExperimentConfig
from attractr.emulator import RunSummary
from attractr.error.exc import AttractrError, ConfigurationError
from attractr.util import fieldnames_of, write_rows

if TYPE_CHECKING:
    from pathlib import Path

    from attractr.config import Arguments


SWEEP_FILE = "sweep.csv"

DATASET_DIR = "data"

DATA_SETTINGS: frozenset[str] = frozenset(
    {
        "domain-length",
        "dt",
        "noise",
    }
)
"""Float settings which change the generated trajectories."""


@attrs.frozen
class SweepGrid:
    key: str
    values: tuple[float, ...]

    @property
    def dest(self) -> str:
        """The `Arguments` attribute the setting is parsed into."""
        if self.key == "lambda":
            return "lambda_"
        return self.key.replace("-", "_")

    @property
    def changes_data(self) -> bool:
        return self.key in DATA_SETTINGS

    def run_name(self, value: float) -> str:
        return f"{self.key}={value:g}"


def parse_grid(grid: str) -> SweepGrid:
    """Return the grid given as `key=v1,v2,...`.

    >>> parse_grid("lambda=0,0.4,0.8")
    SweepGrid(key='lambda', values=(0.0, 0.4, 0.8))
    """
    key, sep, values = grid.partition("=")
    key = key.strip()

    if not sep or not values.strip():
        raise ConfigurationError(
            f"expected a grid of the form key=v1,v2,..., got {grid!r}"
        )

    if TOML_ARGUMENT_TYPE_MAP.get(key) != TomlArgumentType.float:
        raise ConfigurationError(f"{key!r} is not a float setting and cannot be swept")

    try:
        parsed = tuple(float(v) for v in values.split(","))
    except ValueError as exc:
        raise ConfigurationError(f"grid {grid!r} holds a non-number: {exc}") from exc

    if len(set(parsed)) != len(parsed):
        raise ConfigurationError(f"grid {grid!r} repeats a value")

    return SweepGrid(key=key, values=parsed)


@attrs.frozen
class SweepRun:
    """One child run: its value, its arguments and its run directory."""

    value: float
    arguments: Arguments
    output: Path


def plan_runs(grid: SweepGrid, arguments: Arguments, output: Path) -> list[SweepRun]:
    runs: list[SweepRun] = []

    for value in grid.values:
        run_dir = output / grid.run_name(value)

        child = copy.copy(arguments)
        setattr(child, grid.dest, value)
        child.output = run_dir
        if grid.changes_data:
            child.dataset = output / DATASET_DIR / grid.run_name(value)

        runs.append(SweepRun(value=value, arguments=child, output=run_dir))

    return runs


def run_child(run: SweepRun, *, regenerate: bool) -> RunSummary:
    """Run one child, in this process or in a worker, with its own arguments."""
    config = Config()
    previous = config.arguments
    config.arguments = run.arguments

    try:
        experiment = ExperimentConfig.from_arguments(run.arguments)
        if regenerate:
            generate(experiment)
        return train(experiment).summary
    finally:
        config.arguments = previous


def _report(run: SweepRun, outcome: RunSummary | AttractrError) -> RunSummary | None:
    if isinstance(outcome, AttractrError):
        error.error(f"{run.output}: {outcome}")
        return None

    error.info(f"{run.output}: validation rmse {outcome.val_rmse:.4f}")
    return outcome


def _run_sequential(
    runs: list[SweepRun], *, regenerate: bool
) -> list[RunSummary | None]:
    summaries: list[RunSummary | None] = []

    for run in runs:
        try:
            outcome: RunSummary | AttractrError = run_child(run, regenerate=regenerate)
        except AttractrError as exc:
            outcome = exc
        summaries.append(_report(run, outcome))

    return summaries


def _run_parallel(
    runs: list[SweepRun], *, regenerate: bool, workers: int
) -> list[RunSummary | None]:
    summaries: list[RunSummary | None] = []

    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [
            executor.submit(run_child, run, regenerate=regenerate) for run in runs
        ]

        for run, future in zip(runs, futures):
            try:
                outcome: RunSummary | AttractrError = future.result()
            except AttractrError as exc:
                outcome = exc
            summaries.append(_report(run, outcome))

    return summaries


def sweep(
    grid: SweepGrid, arguments: Arguments, *, workers: int = 1
) -> list[tuple[float, RunSummary | None]]:
    """Train one emulator per grid value, `None` for runs which failed."""
    experiment = ExperimentConfig.from_arguments(arguments)
    output = prepare_run_directory(
        experiment.output.output, force=experiment.output.force
    )
    runs = plan_runs(grid, arguments, output)

    if workers > 1 and len(runs) > 1:
        summaries = _run_parallel(runs, regenerate=grid.changes_data, workers=workers)
    else:
        summaries = _run_sequential(runs, regenerate=grid.changes_data)

    results = [(run.value, summary) for run, summary in zip(runs, summaries)]
    write_rows(
        output / SWEEP_FILE,
        [
            {"key": grid.key, "value": value, **attrs.asdict(summary)}
            for value, summary in results
            if summary is not None
        ],
        ["key", "value", *fieldnames_of(RunSummary)],
    )

    return results


def run(config: Config) -> int:
    if config.arguments.grid is None:
        raise ConfigurationError("sweep needs a grid, see --grid")

    grid = parse_grid(config.arguments.grid)
    results = sweep(grid, config.arguments, workers=config.arguments.workers or 1)

    completed = sum(summary is not None for _, summary in results)
    error.attractr(
        f"swept {grid.key} over {len(results)} values, {completed} runs completed"
    )

    return EXIT_SUCCESS
