from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

import pytest

from attractr.cli.toml import _load_from_file

if TYPE_CHECKING:
    from typing import Any


def find_data_file(name: str) -> Path:
    here = Path(__file__).resolve().parent

    data_file = here / "data" / name
    assert data_file.is_file()

    return data_file


@pytest.fixture
def illegal_field_name() -> str:
    return "illegal-field"


@pytest.fixture
def toml_experiment_path() -> Path:
    return find_data_file("experiment.toml")


@pytest.fixture
def toml_experiment(toml_experiment_path) -> dict[str, Any]:
    return _load_from_file(toml_experiment_path)


@pytest.fixture
def toml_with_illegal_field(illegal_field_name, toml_experiment) -> dict[str, Any]:
    return {**toml_experiment, **{illegal_field_name: "any-old-value"}}


@pytest.fixture
def toml_duplicate_path() -> Path:
    return find_data_file("duplicate.toml")
