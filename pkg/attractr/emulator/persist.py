from __future__ import annotations

from typing import TYPE_CHECKING

from attractr.diffcore import load_checkpoint, read_model_kind, save_checkpoint
from attractr.emulator._types import EmulatorConfig
from attractr.emulator.model import MODEL_KIND, EmulatorModel
from attractr.error.exc import DatasetFormatError

if TYPE_CHECKING:
    from pathlib import Path


def save_emulator(model: EmulatorModel, path: Path) -> None:
    save_checkpoint(path, kind=MODEL_KIND, config=model.config, module=model)


def load_emulator(path: Path) -> EmulatorModel:
    """Rebuild the emulator stored at `path`, in the current default precision."""
    if (kind := read_model_kind(path)) != MODEL_KIND:
        raise DatasetFormatError(f"{str(path)!r} holds a {kind!r}, not an emulator")

    config, state = load_checkpoint(path, config_type=EmulatorConfig)

    model = EmulatorModel(config)
    model.load_state_dict(state)
    model.eval()

    return model
