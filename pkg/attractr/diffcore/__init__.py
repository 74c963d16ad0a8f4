"""Differentiable arrays, the primitive set, AdamW and checkpoints, backed by torch."""

from __future__ import annotations

from attractr.diffcore import primitives
from attractr.diffcore._types import DiffArray, OptimizerConfig, Precision
from attractr.diffcore.checkpoint import (
    load_checkpoint,
    read_model_kind,
    save_checkpoint,
)
from attractr.diffcore.gradcheck import GradientCheck, finite_difference_check
from attractr.diffcore.optim import adamw_step, make_optimizer
from attractr.diffcore.precision import seed_everything, set_precision

__all__ = [
    "DiffArray",
    "GradientCheck",
    "OptimizerConfig",
    "Precision",
    "adamw_step",
    "finite_difference_check",
    "load_checkpoint",
    "make_optimizer",
    "primitives",
    "read_model_kind",
    "save_checkpoint",
    "seed_everything",
    "set_precision",
]
