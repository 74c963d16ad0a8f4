from __future__ import annotations

from typing import TYPE_CHECKING, Protocol, runtime_checkable

import attrs

from attractr.error.exc import ConfigurationError

if TYPE_CHECKING:
    from attractr.diffcore import DiffArray


ACTIVATIONS = ("gelu", "identity")


@attrs.frozen
class EmulatorConfig:
    """Architecture of the spectral emulator.

    `modes` is the highest retained Fourier mode M, i.e. modes 0..M are mixed.
    """

    dimension: int
    width: int = 64
    blocks: int = 4
    modes: int = 16
    activation: str = "gelu"
    zero_init_projection: bool = False

    def __attrs_post_init__(self) -> None:
        if self.dimension < 2:
            raise ConfigurationError(f"dimension must be >= 2, got {self.dimension}")
        if self.width < 1 or self.blocks < 0:
            raise ConfigurationError(
                f"width must be >= 1 and blocks >= 0, got {self.width}, {self.blocks}"
            )
        if not 0 <= self.modes <= self.dimension // 2:
            raise ConfigurationError(
                f"modes must be in [0, {self.dimension // 2}], got {self.modes}"
            )
        if self.activation not in ACTIVATIONS:
            raise ConfigurationError(
                f"activation must be one of {ACTIVATIONS}, got {self.activation!r}"
            )


@attrs.frozen
class RolloutPlan:
    """How a window of K+1 states is predicted.

    Sub-rollouts of h+1 states restart from the data at each segment start, the
    rMSE term uses sub-rollouts of h_rmse+1 states.
    """

    K: int
    h: int = 1
    h_rmse: int = 1
    start: int = 0

    def __attrs_post_init__(self) -> None:
        if self.K < 1 or self.h < 1 or self.h_rmse < 1 or self.start < 0:
            raise ConfigurationError(
                f"invalid rollout plan K={self.K}, h={self.h}, h_rmse={self.h_rmse}"
            )

        for name, h in (("h", self.h), ("h_rmse", self.h_rmse)):
            if (self.K + 1) % (h + 1) != 0:
                raise ConfigurationError(
                    f"K+1={self.K + 1} is not divisible by {name}+1={h + 1}"
                )


@runtime_checkable
class Stepper(Protocol):
    """Anything advancing states `[B, d]` with parameters `[B]` by one time step."""

    def step(self, u: DiffArray, phi: DiffArray) -> DiffArray:
        ...


@attrs.frozen
class TrainingLogRow:
    epoch: int
    train_loss: float
    train_rmse: float
    train_structural: float | None
    val_rmse: float
    val_feature: float | None
    val_sinkhorn: float | None


@attrs.frozen
class RunSummary:
    """What a training run directory's `run.json` records."""

    objective: str
    alpha: float | None
    gamma: float | None
    lambda_: float | None
    seed: int
    epochs: int
    best_epoch: int
    val_total: float
    val_rmse: float
    val_feature: float | None = None
    val_sinkhorn: float | None = None
