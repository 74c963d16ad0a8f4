from __future__ import annotations

from pathlib import Path

import attrs
import numpy as np


AGGREGATE_ENV_ID = -1


@attrs.frozen(eq=False)
class Histogram:
    """Per-channel normalised frequencies over shared bin edges.

    `edges[c]` holds B+1 edges and `frequencies[c]` B values summing to 1.
    """

    edges: tuple[np.ndarray, ...]
    frequencies: tuple[np.ndarray, ...]

    @property
    def channels(self) -> int:
        return len(self.edges)

    @property
    def bins(self) -> int:
        return len(self.frequencies[0]) if self.frequencies else 0


@attrs.frozen
class EvalRow:
    env_id: int
    metric: str
    value: float


@attrs.frozen
class EvalMetadata:
    stepper: str
    horizon: int
    rmse_horizon: int
    dataset: Path
    checkpoint: Path | None = None
    seed: int = 0
    noise_scale: float = 0.0


@attrs.frozen
class EvalReport:
    """Per-environment metric rows followed by the aggregate rows (env_id -1)."""

    metadata: EvalMetadata
    rows: tuple[EvalRow, ...]

    def value(self, metric: str, env_id: int = AGGREGATE_ENV_ID) -> float:
        for row in self.rows:
            if row.env_id == env_id and row.metric == metric:
                return row.value
        raise KeyError((env_id, metric))

    def per_env(self, metric: str) -> dict[int, float]:
        return {
            row.env_id: row.value
            for row in self.rows
            if row.metric == metric and row.env_id != AGGREGATE_ENV_ID
        }


@attrs.frozen
class RobustnessRow:
    r: float
    seed: int
    horizon: int
    rmse: float
    histogram_error: float
    spectrum_error: float
