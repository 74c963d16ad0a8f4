from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING, NamedTuple

import attrs
import numpy as np
import torch

from attractr.dynsys import SystemKind
from attractr.error.exc import ConfigurationError

if TYPE_CHECKING:
    from attractr.datastore import Window
    from attractr.diffcore import DiffArray
    from attractr.dynsys import SystemSpec


class Objective(Enum):
    rmse = "rmse"
    sinkhorn = "sinkhorn"
    feature = "feature"

    def __str__(self) -> str:
        return self.value


LORENZ96_CHANNELS = ("du/dt", "advection", "u")
KURAMOTO_SIVASHINSKY_CHANNELS = ("du/dt", "du/dx", "d2u/dx2")


@attrs.frozen
class StatSpec:
    """The summary statistic channels of a system."""

    kind: SystemKind
    channels: tuple[str, ...]
    domain_length: float | None = None

    @classmethod
    def for_system(cls, spec: SystemSpec) -> StatSpec:
        if spec.kind == SystemKind.lorenz96:
            return cls(kind=spec.kind, channels=LORENZ96_CHANNELS)

        return cls(
            kind=spec.kind,
            channels=KURAMOTO_SIVASHINSKY_CHANNELS,
            domain_length=spec.domain_length,
        )


@attrs.frozen
class SinkhornConfig:
    """Entropic OT settings and the weight alpha of the Sinkhorn term.

    gamma multiplies the entropy of the transport plan, the kernel is exp(-C / gamma)
    with C the half squared Euclidean cost.
    """

    gamma: float
    alpha: float = 1.0
    max_iterations: int = 500
    tolerance: float = 1e-6
    epsilon_scaling: bool = True
    scaling_factor: float = 0.5
    sample_cap: int = 2048

    def __attrs_post_init__(self) -> None:
        if self.gamma <= 0:
            raise ConfigurationError(f"gamma must be positive, got {self.gamma}")
        if self.alpha < 0:
            raise ConfigurationError(f"alpha must be non-negative, got {self.alpha}")
        if self.max_iterations < 1:
            raise ConfigurationError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )
        if not 0 < self.scaling_factor < 1:
            raise ConfigurationError(
                f"scaling_factor must be in (0, 1), got {self.scaling_factor}"
            )
        if self.sample_cap < 1:
            raise ConfigurationError(f"sample_cap must be >= 1, got {self.sample_cap}")


@attrs.frozen
class FeatureLossConfig:
    lambda_: float = 0.8

    def __attrs_post_init__(self) -> None:
        if self.lambda_ < 0:
            raise ConfigurationError(f"lambda must be non-negative, got {self.lambda_}")


@attrs.frozen
class SinkhornResult:
    value: DiffArray
    converged: bool
    iterations: int


class LossTerms(NamedTuple):
    total: DiffArray
    rmse: DiffArray
    structural: DiffArray | None
    unconverged: int = 0


@attrs.frozen(eq=False)
class WindowBatch:
    """Stacked windows, states `[B, K+1, d]` and phis `[B]`."""

    states: DiffArray
    phis: DiffArray
    targets: DiffArray

    @classmethod
    def from_windows(
        cls,
        windows: list[Window],
        dtype: torch.dtype | None = None,
    ) -> WindowBatch:
        dtype = dtype or torch.get_default_dtype()
        states = np.stack([w.states for w in windows])
        targets = np.stack([w.targets for w in windows])

        return cls(
            states=torch.as_tensor(states, dtype=dtype),
            phis=torch.as_tensor([w.phi for w in windows], dtype=dtype),
            targets=torch.as_tensor(targets, dtype=dtype),
        )

    def __len__(self) -> int:
        return self.states.shape[0]

    @property
    def K(self) -> int:
        return self.states.shape[1] - 1
