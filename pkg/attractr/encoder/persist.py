from __future__ import annotations

from typing import TYPE_CHECKING

from attractr.diffcore import load_checkpoint, read_model_kind, save_checkpoint
from attractr.encoder._types import EncoderConfig
from attractr.encoder.model import MODEL_KIND, EncoderModel
from attractr.error.exc import DatasetFormatError

if TYPE_CHECKING:
    from pathlib import Path


def save_encoder(model: EncoderModel, path: Path) -> None:
    save_checkpoint(path, kind=MODEL_KIND, config=model.config, module=model)


def load_encoder(path: Path) -> EncoderModel:
    if (kind := read_model_kind(path)) != MODEL_KIND:
        raise DatasetFormatError(f"{str(path)!r} holds a {kind!r}, not an encoder")

    config, state = load_checkpoint(path, config_type=EncoderConfig)

    model = EncoderModel(config)
    model.load_state_dict(state)
    model.eval()
    model.requires_grad_(False)

    return model
