"""The contrastive window encoder, its InfoNCE training and Top-1 accuracy."""

from __future__ import annotations

from attractr.encoder._types import (
    EncoderConfig,
    EncoderLogRow,
    EncoderTrainingConfig,
    TemperatureSchedule,
)
from attractr.encoder.contrastive import (
    Embedder,
    infonce_loss,
    top1_accuracy,
    top1_from_embeddings,
)
from attractr.encoder.model import MODEL_KIND, EncoderModel, unit_channels
from attractr.encoder.persist import load_encoder, save_encoder
from attractr.encoder.train import train_encoder

__all__ = [
    "MODEL_KIND",
    "Embedder",
    "EncoderConfig",
    "EncoderLogRow",
    "EncoderModel",
    "EncoderTrainingConfig",
    "TemperatureSchedule",
    "infonce_loss",
    "load_encoder",
    "save_encoder",
    "top1_accuracy",
    "top1_from_embeddings",
    "train_encoder",
    "unit_channels",
]
