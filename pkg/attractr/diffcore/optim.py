from __future__ import annotations

from typing import TYPE_CHECKING

import torch

from attractr.error.exc import MissingGradientError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from attractr.diffcore._types import DiffArray, OptimizerConfig


def make_optimizer(
    parameters: Iterable[DiffArray],
    config: OptimizerConfig,
) -> torch.optim.AdamW:
    return torch.optim.AdamW(
        list(parameters),
        lr=config.lr,
        betas=config.betas,
        eps=config.eps,
        weight_decay=config.weight_decay,
    )


def adamw_step(
    named_parameters: Iterable[tuple[str, DiffArray]],
    optimizer: torch.optim.AdamW,
) -> None:
    """Apply one AdamW update, every trainable parameter must hold a gradient."""
    for name, parameter in named_parameters:
        if parameter.requires_grad and parameter.grad is None:
            raise MissingGradientError(name)

    optimizer.step()
