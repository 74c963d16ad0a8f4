"""Evaluation of a stepper on clean ground truth.

Rollouts start from the observed (possibly noisy) state and are compared with
the clean states, the way an emulator would be used on measured data.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import torch

from attractr import error
from attractr.config.util import enter_environment
from attractr.datastore import window_of
from attractr.emulator import rollout
from attractr.error.exc import ConfigurationError, RolloutDivergedError
from attractr.losses import StatSpec, rmse_loss, summary_stats
from attractr.metrics._types import AGGREGATE_ENV_ID, EvalReport, EvalRow
from attractr.metrics.histogram import histogram, histogram_error, reference_edges
from attractr.metrics.spectrum import energy_spectrum_error
from attractr.util import fieldnames_of, write_json, write_rows

if TYPE_CHECKING:
    from pathlib import Path

    from attractr.datastore import Dataset
    from attractr.dynsys import SystemSpec, Trajectory
    from attractr.emulator import Stepper
    from attractr.metrics._types import EvalMetadata


REPORT_FILE = "eval.csv"
REPORT_META_FILE = "eval.json"
HISTOGRAM_FILE = "histograms.csv"

HISTOGRAM_ERROR = "histogram_error"
NOISY_HISTOGRAM_ERROR = "noisy_histogram_error"
SPECTRUM_ERROR = "spectrum_error"
SPECTRUM_ERROR_STD = "spectrum_error_std"
RMSE = "rmse"


def statistic_samples(states: np.ndarray, spec: SystemSpec) -> np.ndarray:
    """Summary statistic samples `[T*d, 3]` of a `[T+1, d]` state sequence."""
    window = torch.as_tensor(np.asarray(states), dtype=torch.float64)
    return summary_stats(window, StatSpec.for_system(spec), spec.dt).numpy()


def _to_tensor(array: np.ndarray) -> torch.Tensor:
    return torch.as_tensor(np.asarray(array), dtype=torch.get_default_dtype())


@torch.no_grad()
def eval_rmse_per_env(
    stepper: Stepper,
    dataset: Dataset,
    horizon: int = 1,
    stride: int = 1,
) -> dict[int, float]:
    """Mean rMSE of `horizon`-step rollouts against the clean states, per env.

    Rollouts start at every `stride`-th state and are scored on frames 1..horizon.
    """
    if horizon < 1 or stride < 1:
        raise ConfigurationError(
            f"rMSE horizon and stride must be >= 1, got {horizon}, {stride}"
        )
    if horizon > dataset.length:
        raise ConfigurationError(
            f"rMSE horizon {horizon} exceeds the trajectory length {dataset.length}"
        )

    frames = torch.arange(horizon + 1) > 0
    result: dict[int, float] = {}

    for trajectory in dataset:
        with enter_environment(trajectory.env_id):
            windows = [
                window_of(trajectory, start, horizon)
                for start in range(0, trajectory.length - horizon + 1, stride)
            ]
            starts = _to_tensor(np.stack([w.states[0] for w in windows]))
            targets = _to_tensor(np.stack([w.targets for w in windows]))

            predicted = rollout(stepper, starts, trajectory.phi, horizon)
            result[trajectory.env_id] = float(rmse_loss(targets, predicted, frames))

    return result


def eval_rmse(
    stepper: Stepper,
    dataset: Dataset,
    horizon: int = 1,
    stride: int = 1,
) -> float:
    """rMSE averaged over the environments of `dataset`."""
    per_env = eval_rmse_per_env(stepper, dataset, horizon, stride)
    return float(np.mean(list(per_env.values()))) if per_env else float("nan")


@torch.no_grad()
def long_rollout(stepper: Stepper, trajectory: Trajectory, horizon: int) -> np.ndarray:
    """Roll out `horizon` steps from the trajectory's first observed state."""
    if horizon > trajectory.length:
        raise ConfigurationError(
            f"evaluation horizon {horizon} exceeds the trajectory length "
            f"{trajectory.length}"
        )

    u0 = _to_tensor(trajectory.states[0])
    return rollout(stepper, u0, trajectory.phi, horizon).cpu().numpy()


def long_horizon_metrics(
    stepper: Stepper,
    trajectory: Trajectory,
    spec: SystemSpec,
    horizon: int,
) -> dict[str, float]:
    """Histogram and spectrum errors of a long rollout against the clean states."""
    reference = trajectory.targets[: horizon + 1]
    reference_stats = statistic_samples(reference, spec)

    metrics = {
        NOISY_HISTOGRAM_ERROR: histogram_error(
            reference_stats, statistic_samples(trajectory.states[: horizon + 1], spec)
        )
    }

    try:
        predicted = long_rollout(stepper, trajectory, horizon)
    except RolloutDivergedError as exc:
        error.error(f"{exc}, its long-horizon metrics are NaN")
        return {**metrics, HISTOGRAM_ERROR: np.nan, SPECTRUM_ERROR: np.nan}

    metrics[HISTOGRAM_ERROR] = histogram_error(
        reference_stats, statistic_samples(predicted, spec)
    )
    metrics[SPECTRUM_ERROR] = energy_spectrum_error(reference, predicted)
    return metrics


def evaluate(
    stepper: Stepper,
    dataset: Dataset,
    metadata: EvalMetadata,
    *,
    stride: int = 1,
) -> EvalReport:
    """Return the per-environment metrics and their means (env_id -1).

    The aggregate also carries the standard deviation of the spectrum error over
    the environments.
    """
    if len(dataset) == 0:
        raise ConfigurationError("cannot evaluate on a dataset without environments")

    rmse = eval_rmse_per_env(stepper, dataset, metadata.rmse_horizon, stride)

    per_env: list[EvalRow] = []
    for trajectory in dataset:
        with enter_environment(trajectory.env_id):
            metrics = long_horizon_metrics(
                stepper, trajectory, dataset.spec, metadata.horizon
            )

        metrics[RMSE] = rmse[trajectory.env_id]
        per_env.extend(
            EvalRow(env_id=trajectory.env_id, metric=name, value=float(value))
            for name, value in sorted(metrics.items())
        )

    aggregate: list[EvalRow] = []
    for name in sorted({row.metric for row in per_env}):
        values = [row.value for row in per_env if row.metric == name]
        aggregate.append(EvalRow(AGGREGATE_ENV_ID, name, float(np.mean(values))))

        if name == SPECTRUM_ERROR:
            aggregate.append(
                EvalRow(AGGREGATE_ENV_ID, SPECTRUM_ERROR_STD, float(np.std(values)))
            )

    return EvalReport(metadata=metadata, rows=(*per_env, *aggregate))


def write_eval_report(report: EvalReport, directory: Path) -> None:
    write_rows(directory / REPORT_FILE, report.rows, fieldnames_of(EvalRow))
    write_json(directory / REPORT_META_FILE, report.metadata)


@torch.no_grad()
def export_histograms(
    stepper: Stepper,
    dataset: Dataset,
    horizon: int,
    path: Path,
) -> None:
    """Write the binned statistics of the clean data and of the rollouts.

    One row per (env_id, source, channel, bin), sources "reference" and "model",
    for plotting elsewhere.
    """
    channels = StatSpec.for_system(dataset.spec).channels
    rows: list[dict[str, object]] = []

    for trajectory in dataset:
        with enter_environment(trajectory.env_id):
            reference = statistic_samples(
                trajectory.targets[: horizon + 1], dataset.spec
            )
            edges = reference_edges(reference)

            sources = {"reference": histogram(reference, edges)}
            try:
                predicted = long_rollout(stepper, trajectory, horizon)
            except RolloutDivergedError as exc:
                error.error(f"{exc}, its histogram is not exported")
            else:
                sources["model"] = histogram(
                    statistic_samples(predicted, dataset.spec), edges
                )

        for source, binned in sources.items():
            for channel, channel_edges, frequencies in zip(
                channels, binned.edges, binned.frequencies
            ):
                rows.extend(
                    {
                        "env_id": trajectory.env_id,
                        "source": source,
                        "channel": channel,
                        "bin": b,
                        "lower": float(channel_edges[b]),
                        "upper": float(channel_edges[b + 1]),
                        "frequency": float(frequency),
                    }
                    for b, frequency in enumerate(frequencies)
                )

    write_rows(
        path,
        rows,
        ["env_id", "source", "channel", "bin", "lower", "upper", "frequency"],
    )
