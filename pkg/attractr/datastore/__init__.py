"""Dataset persistence, splits and window sampling."""

from __future__ import annotations

from attractr.datastore._types import (
    CreationMetadata,
    Dataset,
    Split,
    Window,
    stack_windows,
    window_of,
)
from attractr.datastore.build import generate_dataset
from attractr.datastore.io import FORMAT_VERSION, load, save
from attractr.datastore.split import split_by_environment
from attractr.datastore.windows import (
    compatible_window,
    crop_length,
    sample_contrastive_batch,
    sample_eval_pairs,
    sample_windows,
    strided_windows,
)

__all__ = [
    "FORMAT_VERSION",
    "CreationMetadata",
    "Dataset",
    "Split",
    "Window",
    "compatible_window",
    "crop_length",
    "generate_dataset",
    "load",
    "sample_contrastive_batch",
    "sample_eval_pairs",
    "sample_windows",
    "save",
    "split_by_environment",
    "stack_windows",
    "strided_windows",
    "window_of",
]
