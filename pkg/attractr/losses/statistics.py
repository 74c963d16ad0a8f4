from __future__ import annotations

import math
from typing import TYPE_CHECKING

import attrs
import numpy as np
import torch

from attractr.diffcore import primitives
from attractr.dynsys import SystemKind
from attractr.error.exc import ConfigurationError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from attractr.diffcore import DiffArray
    from attractr.losses._types import StatSpec


def _spectral_derivatives(u: DiffArray, L: float) -> tuple[DiffArray, DiffArray]:
    """Return (u_x, u_xx) of the periodic field(s) u along the last axis."""
    d = u.shape[-1]

    k = 2.0 * math.pi * torch.arange(d // 2 + 1, dtype=u.dtype) / L
    k_odd = k.clone()
    if d % 2 == 0:
        k_odd[-1] = 0.0

    u_hat = primitives.rfft(u)
    u_x = primitives.irfft(u_hat * (1j * k_odd), n=d)
    u_xx = primitives.irfft(u_hat * (-(k**2)), n=d)

    return u_x, u_xx


def _advection(u: DiffArray) -> DiffArray:
    return (torch.roll(u, -1, dims=-1) - torch.roll(u, 2, dims=-1)) * torch.roll(
        u, 1, dims=-1
    )


def summary_stats(window: DiffArray, spec: StatSpec, dt: float) -> DiffArray:
    """Return the per (time, space) statistic samples of a window.

    A window `[K+1, d]` gives `[K*d, 3]` and a batch `[B, K+1, d]` gives
    `[B, K*d, 3]`. The temporal derivative is the forward difference at frames
    0..K-1 and the other channels are evaluated at the same frames.
    """
    if window.ndim not in (2, 3):
        raise ConfigurationError(
            "summary statistics expect [K+1, d] or [B, K+1, d], "
            f"got {list(window.shape)}"
        )
    if window.shape[-2] < 2:
        raise ConfigurationError("summary statistics need K >= 1, i.e. two frames")

    u = window[..., :-1, :]
    du_dt = (window[..., 1:, :] - u) / dt

    if spec.kind == SystemKind.lorenz96:
        channels = (du_dt, _advection(u), u)
    else:
        u_x, u_xx = _spectral_derivatives(u, spec.domain_length)
        channels = (du_dt, u_x, u_xx)

    stats = torch.stack(channels, dim=-1)
    return stats.reshape(*window.shape[:-2], -1, len(channels))


@attrs.frozen(eq=False)
class StatNormaliser:
    """Per channel standardisation of statistic samples."""

    mean: DiffArray
    std: DiffArray

    @classmethod
    def identity(cls, channels: int = 3) -> StatNormaliser:
        return cls(mean=torch.zeros(channels), std=torch.ones(channels))

    @classmethod
    def fit(
        cls,
        windows: Iterable[np.ndarray],
        spec: StatSpec,
        dt: float,
    ) -> StatNormaliser:
        """Fit the channel mean and std from training windows `[K+1, d]`."""
        samples = [
            summary_stats(torch.as_tensor(np.asarray(w), dtype=torch.float64), spec, dt)
            for w in windows
        ]

        if not samples:
            raise ConfigurationError("cannot fit a normaliser without windows")

        stacked = torch.cat(samples, dim=0)
        std = stacked.std(dim=0)

        return cls(
            mean=stacked.mean(dim=0).to(torch.get_default_dtype()),
            std=torch.where(std > 0, std, torch.ones_like(std)).to(
                torch.get_default_dtype()
            ),
        )

    def __call__(self, samples: DiffArray) -> DiffArray:
        return (samples - self.mean.to(samples.dtype)) / self.std.to(samples.dtype)


def subsample(
    samples: DiffArray,
    cap: int,
    generator: torch.Generator,
) -> DiffArray:
    """Return at most `cap` samples along the sample axis, drawn without replacement."""
    n = samples.shape[-2]

    if n <= cap:
        return samples

    index = torch.randperm(n, generator=generator)[:cap]
    return primitives.take(samples, index, dim=samples.ndim - 2)
