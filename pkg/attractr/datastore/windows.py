from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from attractr.datastore._types import Window, window_of
from attractr.error.exc import ConfigurationError

if TYPE_CHECKING:
    from attractr.datastore._types import Dataset


def crop_length(T: int, fraction: float = 0.05) -> int:
    """Return the contrastive crop length K, i.e. ceil(fraction * T)."""
    if not 0 < fraction <= 1:
        raise ConfigurationError(f"crop fraction must be in (0, 1], got {fraction}")
    return max(1, math.ceil(fraction * T))


def compatible_window(K: int, h: int) -> int:
    """Return the smallest K' >= K such that K'+1 splits into segments of h+1."""
    if h < 0:
        raise ConfigurationError(f"rollout length must be >= 0, got {h}")

    remainder = (K + 1) % (h + 1)
    return K if remainder == 0 else K + (h + 1 - remainder)


def _check_window(dataset: Dataset, K: int) -> None:
    if len(dataset) == 0:
        raise ConfigurationError("cannot sample windows from an empty dataset")
    if K < 0:
        raise ConfigurationError(f"window length K must be >= 0, got {K}")
    if K > dataset.length:
        raise ConfigurationError(
            f"window length K={K} exceeds the trajectory length T={dataset.length}"
        )


def sample_windows(dataset: Dataset, K: int, batch: int, seed: int) -> list[Window]:
    """Return `batch` windows drawn uniformly over (trajectory, start index)."""
    _check_window(dataset, K)

    rng = np.random.default_rng(seed)
    trajectory_indices = rng.integers(0, len(dataset), size=batch)
    starts = rng.integers(0, dataset.length - K + 1, size=batch)

    return [
        window_of(dataset.trajectories[i], int(start), K)
        for i, start in zip(trajectory_indices, starts)
    ]


def sample_contrastive_batch(
    dataset: Dataset,
    K: int,
    batch: int,
    seed: int,
) -> list[tuple[Window, Window]]:
    """Return (anchor, positive) pairs, at most one pair per environment.

    Both windows of a pair come from one trajectory with independent uniform start
    indices, the other pairs of the batch are its negatives.
    """
    _check_window(dataset, K)

    if dataset.length - K + 1 < 2:
        raise ConfigurationError(
            f"window length K={K} leaves a single start index, positives would be "
            "identical"
        )
    if batch > len(dataset):
        raise ConfigurationError(
            f"contrastive batch of {batch} exceeds the {len(dataset)} environments"
        )

    rng = np.random.default_rng(seed)
    trajectory_indices = rng.choice(len(dataset), size=batch, replace=False)
    starts = rng.integers(0, dataset.length - K + 1, size=(batch, 2))

    pairs: list[tuple[Window, Window]] = []
    for i, (anchor_start, positive_start) in zip(trajectory_indices, starts):
        trajectory = dataset.trajectories[i]
        pairs.append(
            (
                window_of(trajectory, int(anchor_start), K),
                window_of(trajectory, int(positive_start), K),
            )
        )

    return pairs


def sample_eval_pairs(
    dataset: Dataset,
    K: int,
    seed: int,
) -> list[tuple[Window, Window]]:
    """Return one (query, candidate) pair per environment, in environment order."""
    _check_window(dataset, K)

    rng = np.random.default_rng(seed)
    starts = rng.integers(0, dataset.length - K + 1, size=(len(dataset), 2))

    return [
        (
            window_of(trajectory, int(query_start), K),
            window_of(trajectory, int(candidate_start), K),
        )
        for trajectory, (query_start, candidate_start) in zip(
            dataset.trajectories, starts
        )
    ]


def strided_windows(dataset: Dataset, K: int, stride: int) -> list[Window]:
    """Return every window starting at a multiple of `stride`, for evaluation."""
    _check_window(dataset, K)

    if stride < 1:
        raise ConfigurationError(f"stride must be >= 1, got {stride}")

    return [
        window_of(trajectory, start, K)
        for trajectory in dataset.trajectories
        for start in range(0, dataset.length - K + 1, stride)
    ]
