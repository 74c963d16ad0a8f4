from __future__ import annotations

from typing import TYPE_CHECKING

import torch

from attractr.diffcore import primitives
from attractr.error.exc import PrimitiveShapeError, ZeroNormTargetError

if TYPE_CHECKING:
    from attractr.diffcore import DiffArray


def rollout_frames(K: int, h: int) -> torch.Tensor:
    """Return the mask of the predicted frames of a teacher-reset rollout.

    Frames j with j % (h+1) == 0 restart from data and are excluded.
    """
    return torch.arange(K + 1) % (h + 1) != 0


def rmse_loss(
    target: DiffArray,
    prediction: DiffArray,
    frames: torch.Tensor | None = None,
) -> DiffArray:
    """Return the mean over frames of |prediction - target|^2 / |target|^2.

    Windows are `[K+1, d]` or `[B, K+1, d]`, `frames` optionally selects the
    frames (time offsets) to average over.
    """
    if target.shape != prediction.shape or target.ndim < 2:
        raise PrimitiveShapeError("rmse_loss", target.shape, prediction.shape)

    if frames is not None:
        target = target[..., frames, :]
        prediction = prediction[..., frames, :]

    target_norm = primitives.sum(target**2, dim=-1)

    if bool((target_norm == 0).any()):
        raise ZeroNormTargetError("relative error of a zero norm target frame")

    error = primitives.sum((prediction - target) ** 2, dim=-1)
    return primitives.mean(error / target_norm)
