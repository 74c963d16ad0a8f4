from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

import attrs
import torch

from attractr.error.exc import ConfigurationError

if TYPE_CHECKING:
    from typing import TypeAlias


DiffArray: TypeAlias = torch.Tensor
"""An array taking part in reverse-mode differentiation.

The gradient slot is `.grad`, populated by `.backward()` on a scalar output.
"""


class Precision(Enum):
    float32 = "float32"
    float64 = "float64"

    def __str__(self) -> str:
        return self.value

    @property
    def dtype(self) -> torch.dtype:
        return torch.float32 if self == Precision.float32 else torch.float64


@attrs.frozen
class OptimizerConfig:
    """AdamW settings, decoupled weight decay."""

    lr: float = 1e-3
    weight_decay: float = 1e-5
    betas: tuple[float, float] = (0.9, 0.999)
    eps: float = 1e-8

    def __attrs_post_init__(self) -> None:
        if self.lr <= 0:
            raise ConfigurationError(f"learning rate must be positive, got {self.lr}")
        if self.weight_decay < 0:
            raise ConfigurationError(
                f"weight decay must be non-negative, got {self.weight_decay}"
            )
