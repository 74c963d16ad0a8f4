"""The contrastive window encoder.

A window `[K+1, d]` is treated as a one-channel image over (time, space). Each
block halves both axes with a stride-2 convolution and doubles the channels, the
last feature map is averaged and projected to a unit-norm embedding.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import torch
from torch import nn

from attractr.diffcore import primitives
from attractr.encoder._types import EncoderConfig
from attractr.error.exc import ConfigurationError, PrimitiveShapeError

if TYPE_CHECKING:
    from attractr.diffcore import DiffArray


MODEL_KIND = "encoder"
_EPS = 1e-12


def unit_channels(x: DiffArray) -> DiffArray:
    """Scale the channel vector (axis 1) at every position to unit L2 norm."""
    norm = primitives.l2_norm(x, dim=1).clamp_min(_EPS)
    return x / norm.unsqueeze(1)


class EncoderModel(nn.Module):
    def __init__(self, config: EncoderConfig) -> None:
        super().__init__()
        self.config = config

        channels = [1] + [config.channels * 2**i for i in range(config.blocks)]
        self.convs = nn.ModuleList(
            nn.Conv2d(c_in, c_out, kernel_size=3, stride=2, padding=1)
            for c_in, c_out in zip(channels[:-1], channels[1:])
        )
        self.head = nn.Linear(channels[-1], config.embedding_dim)

        self.register_buffer("input_mean", torch.zeros(()))
        self.register_buffer("input_std", torch.ones(()))

    def set_input_normalisation(self, mean: float, std: float) -> None:
        with torch.no_grad():
            self.input_mean.fill_(mean)
            self.input_std.fill_(std if std > 0 else 1.0)

    def _prepare(self, window: DiffArray) -> DiffArray:
        if window.ndim == 2:
            window = window[None]

        if window.ndim != 3 or window.shape[-1] != self.config.dimension:
            expected = (self.config.window_length, self.config.dimension)
            raise PrimitiveShapeError("encoder", window.shape, expected)

        length = self.config.window_length
        if window.shape[1] < length:
            raise ConfigurationError(
                f"encoder windows hold {length} states, got {window.shape[1]}"
            )

        window = primitives.slice(window, 1, 0, length)
        window = (window - self.input_mean) / self.input_std
        return window[:, None]  # [B, 1, K+1, d]

    def _feature_maps(self, window: DiffArray) -> list[DiffArray]:
        x = self._prepare(window)
        maps: list[DiffArray] = []

        for conv in self.convs:
            x = primitives.gelu(
                primitives.conv2d(x, conv.weight, conv.bias, stride=2, padding=1)
            )
            maps.append(x)

        return maps

    def _embed(self, last_map: DiffArray) -> DiffArray:
        pooled = primitives.mean(last_map, dim=(2, 3))
        embedding = primitives.add(
            primitives.matmul(pooled, self.head.weight.T), self.head.bias
        )
        return unit_channels(embedding)

    def forward(self, window: DiffArray) -> DiffArray:
        """Return the unit-norm embeddings `[B, p]` of windows `[B, K+1, d]`.

        Longer windows are cropped to their first `window_length` states.
        """
        return self._embed(self._feature_maps(window)[-1])

    def embed(self, window: DiffArray) -> DiffArray:
        return self(window)

    def features(self, window: DiffArray) -> list[DiffArray]:
        """Return the E channel-normalised feature maps followed by the embedding."""
        maps = self._feature_maps(window)
        return [unit_channels(m) for m in maps] + [self._embed(maps[-1])]
