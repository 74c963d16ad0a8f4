"""Model checkpoints.

A checkpoint directory holds `model.json` (the model kind and its architecture
settings), `params.bin` (every parameter as raw little-endian floats, complex
parameters as interleaved real/imaginary pairs) and `manifest.json` (the name,
shape, offset and byte count of each parameter).
"""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import attrs
import numpy as np
import torch

from attractr.error.exc import (
    DatasetFormatError,
    ShapeMismatchError,
    TruncatedFileError,
)
from attractr.util import hash_bytes, make_json_converter, write_json

if TYPE_CHECKING:
    from pathlib import Path
    from typing import Any, Final, TypeVar

    from torch import nn

    T = TypeVar("T")


FORMAT_VERSION: Final = 1
MODEL_FILE: Final = "model.json"
PARAMS_FILE: Final = "params.bin"
MANIFEST_FILE: Final = "manifest.json"


@attrs.frozen
class ParameterRecord:
    name: str
    shape: tuple[int, ...]
    is_complex: bool
    offset: int
    nbytes: int


@attrs.frozen
class Manifest:
    format_version: int
    dtype: str
    parameters: tuple[ParameterRecord, ...]
    md5: str


def save_checkpoint(path: Path, *, kind: str, config: Any, module: nn.Module) -> None:
    """Write the module's parameters and architecture `config` to `path`."""
    path.mkdir(parents=True, exist_ok=True)

    converter = make_json_converter()

    chunks: list[bytes] = []
    records: list[ParameterRecord] = []
    offset = 0

    for name, tensor in module.state_dict().items():
        is_complex = torch.is_complex(tensor)
        values = torch.view_as_real(tensor) if is_complex else tensor
        data = values.detach().cpu().numpy().astype("<f8").tobytes(order="C")

        records.append(
            ParameterRecord(
                name=name,
                shape=tuple(tensor.shape),
                is_complex=is_complex,
                offset=offset,
                nbytes=len(data),
            )
        )
        chunks.append(data)
        offset += len(data)

    params = b"".join(chunks)
    (path / PARAMS_FILE).write_bytes(params)

    write_json(
        path / MANIFEST_FILE,
        Manifest(
            format_version=FORMAT_VERSION,
            dtype="float64",
            parameters=tuple(records),
            md5=hash_bytes(params),
        ),
    )
    (path / MODEL_FILE).write_text(
        json.dumps(
            {"kind": kind, "config": converter.unstructure(config)},
            indent=4,
            sort_keys=True,
        )
        + "\n"
    )


def read_model_kind(path: Path) -> str:
    model_file = path / MODEL_FILE

    if not model_file.is_file():
        raise DatasetFormatError(f"{str(model_file)!r} does not exist")

    return json.loads(model_file.read_text())["kind"]


def load_checkpoint(
    path: Path,
    *,
    config_type: type[T],
    dtype: torch.dtype | None = None,
) -> tuple[T, dict[str, torch.Tensor]]:
    """Return the architecture config and the state dict stored at `path`."""
    converter = make_json_converter()

    model_file = path / MODEL_FILE
    manifest_file = path / MANIFEST_FILE
    params_file = path / PARAMS_FILE

    for file in (model_file, manifest_file, params_file):
        if not file.is_file():
            raise DatasetFormatError(f"{str(file)!r} does not exist")

    model = json.loads(model_file.read_text())
    config = converter.structure(model["config"], config_type)
    manifest = converter.structure(json.loads(manifest_file.read_text()), Manifest)

    if manifest.format_version != FORMAT_VERSION:
        raise DatasetFormatError(
            f"unsupported checkpoint format_version {manifest.format_version}"
        )

    params = params_file.read_bytes()
    expected = sum(record.nbytes for record in manifest.parameters)
    if len(params) != expected:
        raise TruncatedFileError(
            f"{PARAMS_FILE}: expected {expected} bytes, found {len(params)}"
        )

    dtype = dtype or torch.get_default_dtype()
    state: dict[str, torch.Tensor] = {}

    for record in manifest.parameters:
        values_shape = (*record.shape, 2) if record.is_complex else record.shape
        if int(np.prod(values_shape)) * 8 != record.nbytes:
            raise ShapeMismatchError(
                f"{record.name}: shape {list(record.shape)} does not match "
                f"{record.nbytes} bytes"
            )

        chunk = params[record.offset : record.offset + record.nbytes]
        values = np.frombuffer(chunk, dtype="<f8").reshape(values_shape).copy()
        tensor = torch.from_numpy(values).to(dtype)

        if record.is_complex:
            tensor = torch.view_as_complex(tensor)
        state[record.name] = tensor

    return config, state
