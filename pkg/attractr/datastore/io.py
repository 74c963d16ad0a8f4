"""Dataset persistence.

A dataset directory holds `meta.json` and, per trajectory, the raw little-endian
float64 files `traj_<env_id>.f64` (observed states) and `clean_<env_id>.f64`
(clean states), both row-major `[time, space]`.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import TYPE_CHECKING

import attrs
import numpy as np
from cattrs.errors import ClassValidationError

from attractr.datastore._types import CreationMetadata, Dataset, Split
from attractr.dynsys import EnvironmentParam, SystemSpec, Trajectory
from attractr.error.exc import (
    ConfigurationError,
    DatasetFormatError,
    FormatVersionError,
    IntegrityError,
    ShapeMismatchError,
    TruncatedFileError,
)
from attractr.util import deserialise, hash_bytes, hash_file_content, serialise

if TYPE_CHECKING:
    from typing import Any, Final


FORMAT_VERSION: Final = 1
META_FILE: Final = "meta.json"
DTYPE: Final = "<f8"
ITEMSIZE: Final = 8


@attrs.frozen
class ArrayFile:
    name: str
    nbytes: int
    md5: str


@attrs.frozen
class TrajectoryRecord:
    env_id: int
    phi: float
    noise_scale: float
    seed: int
    split: Split
    shape: tuple[int, int]
    states: ArrayFile
    clean_states: ArrayFile | None = None


@attrs.frozen
class DatasetMeta:
    format_version: int
    dtype: str
    endianness: str
    order: str
    spec: SystemSpec
    metadata: CreationMetadata
    trajectories: tuple[TrajectoryRecord, ...]


def _write_array(directory: Path, name: str, array: np.ndarray) -> ArrayFile:
    data = np.ascontiguousarray(array, dtype=DTYPE).tobytes(order="C")
    (directory / name).write_bytes(data)
    return ArrayFile(name=name, nbytes=len(data), md5=hash_bytes(data))


def save(dataset: Dataset, path: Path) -> None:
    """Write the dataset to the directory `path`, creating it if needed."""
    path.mkdir(parents=True, exist_ok=True)

    records: list[TrajectoryRecord] = []
    for trajectory in dataset.trajectories:
        env_id = trajectory.env_id

        states = _write_array(path, f"traj_{env_id}.f64", trajectory.states)
        clean_states = None
        if trajectory.clean_states is not None:
            clean_states = _write_array(
                path, f"clean_{env_id}.f64", trajectory.clean_states
            )

        records.append(
            TrajectoryRecord(
                env_id=env_id,
                phi=trajectory.phi,
                noise_scale=trajectory.noise_scale,
                seed=trajectory.seed,
                split=dataset.splits[env_id],
                shape=tuple(trajectory.states.shape),
                states=states,
                clean_states=clean_states,
            )
        )

    meta = DatasetMeta(
        format_version=FORMAT_VERSION,
        dtype="float64",
        endianness="little",
        order="C",
        spec=dataset.spec,
        metadata=dataset.metadata,
        trajectories=tuple(records),
    )
    (path / META_FILE).write_text(serialise(meta, indent=4) + "\n")


def _read_meta(path: Path) -> DatasetMeta:
    meta_file = path / META_FILE

    if not meta_file.is_file():
        raise DatasetFormatError(f"{str(meta_file)!r} does not exist")

    try:
        raw: dict[str, Any] = json.loads(meta_file.read_text())
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"{str(meta_file)!r} is not valid JSON") from exc

    version = raw.get("format_version") if isinstance(raw, dict) else None
    if version != FORMAT_VERSION:
        raise FormatVersionError(
            f"unsupported dataset format_version {version!r}, "
            f"expected {FORMAT_VERSION}"
        )

    try:
        return deserialise(meta_file.read_text(), type=DatasetMeta)
    except (ClassValidationError, ConfigurationError, KeyError, TypeError) as exc:
        raise DatasetFormatError(f"{str(meta_file)!r} is malformed: {exc}") from exc


def _read_array(
    path: Path,
    record: ArrayFile,
    shape: tuple[int, int],
    *,
    verify: bool,
) -> np.ndarray:
    expected_nbytes = int(np.prod(shape)) * ITEMSIZE

    if expected_nbytes != record.nbytes:
        raise ShapeMismatchError(
            f"{record.name}: shape {list(shape)} needs {expected_nbytes} bytes, "
            f"meta.json records {record.nbytes}"
        )

    file = path / record.name
    actual_nbytes = file.stat().st_size if file.is_file() else 0

    if actual_nbytes != record.nbytes:
        raise TruncatedFileError(
            f"{record.name}: expected {record.nbytes} bytes, found {actual_nbytes}"
        )

    if verify and hash_file_content(file) != record.md5:
        raise IntegrityError(f"{record.name}: content does not match its md5 hash")

    data = file.read_bytes()
    return np.frombuffer(data, dtype=DTYPE).reshape(shape).astype(np.float64)


def load(path: Path, *, verify: bool = False) -> Dataset:
    """Return the dataset stored in the directory `path`.

    With `verify`, each array file is re-hashed against `meta.json`.
    """
    meta = _read_meta(path)

    if meta.dtype != "float64" or meta.endianness != "little" or meta.order != "C":
        raise DatasetFormatError(
            f"unsupported array layout {meta.dtype}/{meta.endianness}/{meta.order}"
        )

    shapes = {record.shape for record in meta.trajectories}
    if len(shapes) > 1:
        raise ShapeMismatchError(f"trajectories have differing shapes {sorted(shapes)}")

    trajectories: list[Trajectory] = []
    for record in meta.trajectories:
        states = _read_array(path, record.states, record.shape, verify=verify)
        clean_states = None
        if record.clean_states is not None:
            clean_states = _read_array(
                path, record.clean_states, record.shape, verify=verify
            )

        trajectories.append(
            Trajectory(
                env=EnvironmentParam(env_id=record.env_id, phi=record.phi),
                states=states,
                clean_states=clean_states,
                noise_scale=record.noise_scale,
                seed=record.seed,
            )
        )

    try:
        return Dataset(
            spec=meta.spec,
            trajectories=trajectories,
            splits={record.env_id: record.split for record in meta.trajectories},
            metadata=meta.metadata,
        )
    except ConfigurationError as exc:
        raise ShapeMismatchError(str(exc)) from exc
