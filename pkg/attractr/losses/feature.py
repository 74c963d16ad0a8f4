from __future__ import annotations

from contextlib import contextmanager
from typing import TYPE_CHECKING, Protocol

import torch

from attractr.error.exc import PrimitiveShapeError

if TYPE_CHECKING:
    from collections.abc import Iterator

    from torch import nn

    from attractr.diffcore import DiffArray


class FeatureExtractor(Protocol):
    def features(self, window: DiffArray) -> list[DiffArray]:
        """Return the channel-normalised per-layer features plus the embedding."""
        ...


@contextmanager
def frozen(module: nn.Module) -> Iterator[nn.Module]:
    """Disable gradients of the module's parameters while in scope."""
    previous = [p.requires_grad for p in module.parameters()]
    module.requires_grad_(False)

    try:
        yield module
    finally:
        for parameter, requires_grad in zip(module.parameters(), previous):
            parameter.requires_grad_(requires_grad)


def layer_distance(target: DiffArray, predicted: DiffArray) -> DiffArray:
    """Mean cosine distance between unit channel vectors, channels on axis 1."""
    if target.shape != predicted.shape:
        raise PrimitiveShapeError("feature_loss", target.shape, predicted.shape)

    return (1.0 - (target * predicted).sum(dim=1)).mean()


def feature_loss(
    target: DiffArray,
    predicted: DiffArray,
    encoder: FeatureExtractor,
) -> DiffArray:
    """Sum over encoder layers of the mean cosine distance between feature maps.

    The target's features are constants and the encoder receives no gradient, only
    the predicted window does.
    """
    if target.shape != predicted.shape:
        raise PrimitiveShapeError("feature_loss", target.shape, predicted.shape)

    with frozen(encoder):  # type: ignore[arg-type]
        with torch.no_grad():
            target_features = encoder.features(target)
        predicted_features = encoder.features(predicted)

    return sum(
        (
            layer_distance(t.detach(), p)
            for t, p in zip(target_features, predicted_features)
        ),
        start=torch.zeros((), dtype=predicted.dtype),
    )
