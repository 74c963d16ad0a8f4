"""Histograms of statistic samples and the L1 histogram error."""

from __future__ import annotations

import math

import numpy as np

from attractr.error.exc import ConfigurationError
from attractr.metrics._types import Histogram


def bin_count(samples: int) -> int:
    """The square-root rule, ceil(sqrt(n)) bins."""
    return max(1, math.ceil(math.sqrt(samples)))


def _as_samples(samples: np.ndarray) -> np.ndarray:
    samples = np.asarray(samples, dtype=np.float64)

    if samples.ndim == 1:
        samples = samples[:, None]
    if samples.ndim != 2 or samples.shape[0] == 0:
        raise ConfigurationError(
            f"histograms need non-empty [n, k] samples, got shape {samples.shape}"
        )

    return samples


def reference_edges(reference: np.ndarray) -> tuple[np.ndarray, ...]:
    """Per-channel equal-width edges spanning the reference samples."""
    reference = _as_samples(reference)
    bins = bin_count(reference.shape[0])

    edges = []
    for channel in reference.T:
        lo, hi = float(channel.min()), float(channel.max())
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        edges.append(np.linspace(lo, hi, bins + 1))

    return tuple(edges)


def histogram(
    samples: np.ndarray,
    edges: tuple[np.ndarray, ...] | None = None,
) -> Histogram:
    """Bin `samples` `[n, k]`, values beyond the edges count in the boundary bins."""
    samples = _as_samples(samples)
    edges = edges if edges is not None else reference_edges(samples)

    if len(edges) != samples.shape[1]:
        raise ConfigurationError(
            f"{len(edges)} channel edges for samples of {samples.shape[1]} channels"
        )

    frequencies = []
    for channel, channel_edges in zip(samples.T, edges):
        clipped = np.clip(channel, channel_edges[0], channel_edges[-1])
        counts, _ = np.histogram(clipped, bins=channel_edges)
        frequencies.append(counts / counts.sum())

    return Histogram(edges=tuple(edges), frequencies=tuple(frequencies))


def histogram_error(reference: np.ndarray, candidate: np.ndarray) -> float:
    """Sum over bins of |c_b - c_b_hat|, averaged over channels.

    Edges and the bin count come from the reference, so the order of the
    arguments matters. The value lies in [0, 2].
    """
    reference_histogram = histogram(reference)
    candidate_histogram = histogram(candidate, reference_histogram.edges)

    errors = [
        float(np.abs(c - c_hat).sum())
        for c, c_hat in zip(
            reference_histogram.frequencies, candidate_histogram.frequencies
        )
    ]
    return float(np.mean(errors))
