"""The subcommands, each a `run(config) -> exit code`."""

from __future__ import annotations

from attractr.commands import (
    evaluation,
    generate,
    robustness,
    select_lambda,
    sweep,
    train,
    train_encoder,
)
from attractr.config import Command

COMMANDS = {
    Command.generate: generate.run,
    Command.train_encoder: train_encoder.run,
    Command.train: train.run,
    Command.eval: evaluation.run,
    Command.sweep: sweep.run,
    Command.select_lambda: select_lambda.run,
    Command.robustness: robustness.run,
}

__all__ = [
    "COMMANDS",
    "evaluation",
    "generate",
    "robustness",
    "select_lambda",
    "sweep",
    "train",
    "train_encoder",
]
