from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from attractr.config._types import Arguments


def validate_arguments(arguments: Arguments) -> Arguments:
    """Validate and return the given arguments."""
    from attractr import error  # circular import as error.info(...) etc use config

    if arguments.is_strict and arguments._warning_level == "none":
        error.attractr("warnings are hidden, but --strict will still make errors fatal")

    toml = arguments.experiment_toml
    if toml is not None and not toml.is_file():
        error.fatal(f"config {str(toml)!r} does not exist")

    if arguments.workers is not None and arguments.workers < 1:
        error.fatal("workers must be a positive integer")

    return arguments
