from __future__ import annotations

import sys
from typing import TYPE_CHECKING

if sys.version_info.major == 3 and sys.version_info.minor >= 11:
    import tomllib  # type: ignore reportMissingImports
    from tomllib import TOMLDecodeError  # type: ignore reportMissingImports; noqa: F401
else:
    import tomli as tomllib
    from tomli import TOMLDecodeError  # noqa: F401

if TYPE_CHECKING:
    from pathlib import Path
    from typing import Any


class DuplicateTomlKeyError(ValueError):
    """The same setting is given in two sections of the experiment TOML."""


# HACK Wrap `tomllib.loads` to handle type hinting on different python versions
def _load_from_file(file: Path) -> dict[str, Any]:
    return tomllib.loads(file.read_text())


def parse_experiment_toml(experiment_toml: Path | None) -> dict[str, Any]:
    """Return the flattened experiment toml, or `{}` when there is none."""
    if experiment_toml is None:
        return {}

    return flatten_experiment_toml(_load_from_file(experiment_toml))


def flatten_experiment_toml(conf: dict[str, Any]) -> dict[str, Any]:
    """Return the settings of every section as one table.

    Sections only group settings, a key means the same thing in any section (or at
    the top level).

    >>> flatten_experiment_toml({"system": {"kind": "lorenz96"}, "seed": 1})
    {'kind': 'lorenz96', 'seed': 1}
    """
    flat: dict[str, Any] = {}

    def _set(key: str, value: Any) -> None:
        if key in flat:
            raise DuplicateTomlKeyError(f"{key!r} is given more than once")
        flat[key] = value

    for key, value in conf.items():
        if isinstance(value, dict):
            for inner_key, inner_value in value.items():
                _set(inner_key, inner_value)
        else:
            _set(key, value)

    return flat
