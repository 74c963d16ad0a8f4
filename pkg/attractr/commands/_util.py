from __future__ import annotations

from typing import TYPE_CHECKING

from attractr import datastore
from attractr.config import Config
from attractr.error.exc import ConfigurationError, RunDirectoryExistsError
from attractr.util import write_json

if TYPE_CHECKING:
    from pathlib import Path

    from attractr.config.experiment import ExperimentConfig
    from attractr.datastore import Dataset, Split


CONFIG_FILE = "config.json"


def prepare_run_directory(path: Path, *, force: bool = False) -> Path:
    """Create the run directory `path`, refusing a populated one unless forced."""
    if path.exists() and not path.is_dir():
        raise RunDirectoryExistsError(f"{str(path)!r} exists and is not a directory")

    if path.is_dir() and any(path.iterdir()) and not force:
        raise RunDirectoryExistsError(
            f"run directory {str(path)!r} is not empty, use --force to overwrite it"
        )

    path.mkdir(parents=True, exist_ok=True)
    return path


def resolve_checkpoint(path: Path) -> Path:
    """Return the checkpoint of a run directory, or `path` if it is one."""
    candidate = path / Config.CHECKPOINT_DIR

    if candidate.is_dir():
        return candidate
    if path.is_dir():
        return path

    raise ConfigurationError(f"checkpoint {str(path)!r} does not exist")


def load_split(experiment: ExperimentConfig, split: Split) -> Dataset:
    path = experiment.data.dataset

    if not path.is_dir():
        raise ConfigurationError(
            f"dataset {str(path)!r} does not exist, run `attractr generate` first"
        )

    return datastore.load(path).subset(split)


def write_experiment_config(experiment: ExperimentConfig, directory: Path) -> None:
    write_json(directory / CONFIG_FILE, experiment)
