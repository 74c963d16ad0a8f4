from __future__ import annotations

import attrs

from attractr.diffcore import OptimizerConfig
from attractr.error.exc import ConfigurationError


@attrs.frozen
class EncoderConfig:
    """Architecture of the contrastive encoder.

    Windows of `window_length` states of dimension `dimension` pass through
    `blocks` stride-2 convolutions with `channels * 2**i` output channels.
    """

    dimension: int
    window_length: int
    blocks: int = 3
    channels: int = 16
    embedding_dim: int = 64

    def __attrs_post_init__(self) -> None:
        if self.blocks < 3:
            raise ConfigurationError(
                f"the encoder needs at least 3 blocks, got {self.blocks}"
            )
        if self.window_length < 2 or self.dimension < 2:
            raise ConfigurationError(
                f"encoder windows must be at least 2x2, got "
                f"{self.window_length}x{self.dimension}"
            )
        if self.channels < 1 or self.embedding_dim < 1:
            raise ConfigurationError(
                f"channels and embedding_dim must be >= 1, got {self.channels}, "
                f"{self.embedding_dim}"
            )


@attrs.frozen
class TemperatureSchedule:
    """InfoNCE temperature, held at `tau_start` then raised to `tau_end`.

    The warm-up lasts `warmup_epochs` (half the run by default), after which tau
    rises linearly over `ramp_epochs` epochs.
    """

    total_epochs: int
    tau_start: float = 0.3
    tau_end: float = 0.7
    warmup_epochs: int | None = None
    ramp_epochs: int = 1

    def __attrs_post_init__(self) -> None:
        if not 0 < self.tau_start <= self.tau_end:
            raise ConfigurationError(
                f"expected 0 < tau_start <= tau_end, got {self.tau_start}, "
                f"{self.tau_end}"
            )
        if self.ramp_epochs < 1:
            raise ConfigurationError(
                f"ramp_epochs must be >= 1, got {self.ramp_epochs}"
            )

    @property
    def warmup(self) -> int:
        if self.warmup_epochs is not None:
            return self.warmup_epochs
        return self.total_epochs // 2

    def tau(self, epoch: int) -> float:
        if epoch < self.warmup:
            return self.tau_start

        progress = min(1.0, (epoch - self.warmup + 1) / self.ramp_epochs)
        return self.tau_start + (self.tau_end - self.tau_start) * progress


@attrs.frozen
class EncoderTrainingConfig:
    epochs: int
    schedule: TemperatureSchedule
    batch_size: int = 64
    steps_per_epoch: int = 10
    eval_interval: int = 10
    seed: int = 0
    optimizer: OptimizerConfig = OptimizerConfig()

    def __attrs_post_init__(self) -> None:
        if self.epochs < 1 or self.steps_per_epoch < 1 or self.eval_interval < 1:
            raise ConfigurationError(
                "epochs, steps_per_epoch and eval_interval must be >= 1"
            )
        if self.batch_size < 2:
            raise ConfigurationError(
                f"contrastive batches need >= 2 pairs, got {self.batch_size}"
            )


@attrs.frozen
class EncoderLogRow:
    epoch: int
    tau: float
    loss: float
    top1: float | None
