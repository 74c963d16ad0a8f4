from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import torch

from attractr.diffcore import primitives
from attractr.dynsys import reference_step
from attractr.error.exc import ConfigurationError, RolloutDivergedError

if TYPE_CHECKING:
    from attractr.diffcore import DiffArray
    from attractr.dynsys import SystemSpec
    from attractr.emulator._types import Stepper


class SimulatorStepper:
    """The reference integrator as a (non-differentiable) stepper."""

    def __init__(self, spec: SystemSpec) -> None:
        self.spec = spec

    def step(self, u: DiffArray, phi: DiffArray | float) -> DiffArray:
        states = u.detach().cpu().numpy().reshape(-1, u.shape[-1])
        phis = np.broadcast_to(
            torch.as_tensor(phi).detach().cpu().numpy().reshape(-1), (len(states),)
        )

        next_states = np.stack(
            [reference_step(self.spec, s, float(p)) for s, p in zip(states, phis)]
        )
        return torch.as_tensor(next_states.reshape(u.shape), dtype=u.dtype)


class ZeroStepper:
    """Predicts the zero state, a baseline for the metrics."""

    def step(self, u: DiffArray, phi: DiffArray | float) -> DiffArray:
        return torch.zeros_like(u)


def rollout(
    stepper: Stepper,
    u0: DiffArray,
    phi: DiffArray | float,
    h: int,
) -> DiffArray:
    """Compose the stepper with its own output h times.

    Returns `[h+1, d]` for `u0` of shape `[d]` and `[B, h+1, d]` for `[B, d]`,
    element 0 being `u0` itself.
    """
    if h < 0:
        raise ConfigurationError(f"rollout length must be >= 0, got {h}")

    states = [u0]
    u = u0

    for step in range(1, h + 1):
        u = stepper.step(u, phi)

        if not bool(torch.isfinite(u).all()):
            raise RolloutDivergedError(step)

        states.append(u)

    return torch.stack(states, dim=-2)


def rollout_concat(
    stepper: Stepper,
    window: DiffArray,
    phi: DiffArray | float,
    h: int,
) -> DiffArray:
    """Concatenate sub-rollouts of h+1 states, each restarted from the window.

    The window holds ground truth `[K+1, d]` or `[B, K+1, d]`, segment starts are
    the frames 0, h+1, 2(h+1), ... and the output has the window's shape.
    """
    unbatched = window.ndim == 2
    if unbatched:
        window = window[None]

    batch, frames, d = window.shape
    if h < 0 or frames % (h + 1) != 0:
        raise ConfigurationError(
            f"window of K+1={frames} states is not divisible into segments of "
            f"h+1={h + 1} states"
        )

    segments = frames // (h + 1)
    starts = window[:, :: h + 1, :].reshape(batch * segments, d)

    phis = torch.as_tensor(phi, dtype=window.dtype).reshape(-1)
    phis = phis.expand(batch) if phis.numel() == 1 else phis
    phis = primitives.take(phis, torch.arange(batch).repeat_interleave(segments))

    predicted = rollout(stepper, starts, phis, h)  # [B*segments, h+1, d]
    predicted = predicted.reshape(batch, frames, d)

    return predicted[0] if unbatched else predicted
