"""How error metrics of the ground-truth system respond to noise.

The reference run starts from a state on the attractor, the perturbed run from
the same state plus noise of relative scale r. Pointwise errors saturate quickly
while the statistics of the two runs stay close.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from attractr.dynsys import add_noise, derive_seed, initial_condition, simulate
from attractr.error.exc import ConfigurationError
from attractr.metrics._types import RobustnessRow
from attractr.metrics.evaluate import statistic_samples
from attractr.metrics.histogram import histogram_error
from attractr.metrics.spectrum import energy_spectrum_error
from attractr.util import fieldnames_of, write_rows

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from attractr.dynsys import SystemSpec


def relative_rmse(reference: np.ndarray, candidate: np.ndarray) -> float:
    """Mean over frames 1.. of |candidate - reference|^2 / |reference|^2."""
    error = np.sum((candidate[1:] - reference[1:]) ** 2, axis=-1)
    return float(np.mean(error / np.sum(reference[1:] ** 2, axis=-1)))


def _perturbed_runs(
    spec: SystemSpec,
    phi: float,
    r: float,
    horizon: int,
    seed: int,
    measurement_noise: bool,
) -> tuple[np.ndarray, np.ndarray]:
    init_rng = np.random.default_rng(derive_seed(seed, 0))
    u0 = simulate(spec, phi, initial_condition(spec, init_rng), spec.spinup_steps)[-1]

    reference = simulate(spec, phi, u0, horizon)

    sigma = float(np.std(reference))
    noise_rng = np.random.default_rng(derive_seed(seed, 1))
    perturbed_u0 = u0 + noise_rng.normal(0.0, r * sigma, size=u0.shape)

    perturbed = simulate(spec, phi, perturbed_u0, horizon)
    if measurement_noise:
        perturbed = add_noise(perturbed, r, derive_seed(seed, 2))

    return reference, perturbed


def _compare(
    spec: SystemSpec,
    reference: np.ndarray,
    perturbed: np.ndarray,
    *,
    r: float,
    seed: int,
    horizon: int,
) -> RobustnessRow:
    reference, perturbed = reference[: horizon + 1], perturbed[: horizon + 1]

    return RobustnessRow(
        r=r,
        seed=seed,
        horizon=horizon,
        rmse=relative_rmse(reference, perturbed),
        histogram_error=histogram_error(
            statistic_samples(reference, spec), statistic_samples(perturbed, spec)
        ),
        spectrum_error=energy_spectrum_error(reference, perturbed),
    )


def perturbed_run_metrics(
    spec: SystemSpec,
    phi: float,
    r: float,
    horizon: int,
    seed: int,
    *,
    measurement_noise: bool = False,
) -> RobustnessRow:
    """Compare a run from a noise-perturbed initial state with the clean run."""
    reference, perturbed = _perturbed_runs(
        spec, phi, r, horizon, seed, measurement_noise
    )
    return _compare(spec, reference, perturbed, r=r, seed=seed, horizon=horizon)


def noise_robustness_sweep(
    spec: SystemSpec,
    phi: float,
    r_grid: Sequence[float],
    horizons: int | Sequence[int],
    *,
    seeds: int = 1,
    seed: int = 0,
    measurement_noise: bool = False,
    path: Path | None = None,
) -> list[RobustnessRow]:
    """One row per (r, seed, horizon), written to `path` as CSV if given.

    Each (r, seed) pair is simulated once up to the longest horizon and the
    shorter horizons score prefixes of those runs.
    """
    r_grid = [float(r) for r in r_grid]
    horizons = sorted({int(h) for h in np.atleast_1d(horizons)})

    if not r_grid or r_grid[0] != 0 or r_grid != sorted(r_grid):
        raise ConfigurationError(
            f"the noise grid must be ascending and start at 0, got {r_grid}"
        )
    if seeds < 1 or not horizons or horizons[0] < 1:
        raise ConfigurationError(
            f"seeds and horizons must be >= 1, got {seeds}, {horizons}"
        )

    rows = []
    for r in r_grid:
        for i in range(seeds):
            run_seed = derive_seed(seed, i)
            reference, perturbed = _perturbed_runs(
                spec, phi, r, horizons[-1], run_seed, measurement_noise
            )
            rows.extend(
                _compare(spec, reference, perturbed, r=r, seed=run_seed, horizon=h)
                for h in horizons
            )

    if path is not None:
        write_rows(path, rows, fieldnames_of(RobustnessRow))

    return rows
