"""Attractr error/logging functions."""

from __future__ import annotations

import sys
from enum import Enum
from typing import NoReturn

from attractr.cli.exit_codes import EXIT_FAILURE
from attractr.config import Config, ShowWarnings


__ERROR = "{prefix}: {optional_context}{message}"
__CONTEXT = "\033[1m{}\033[0m: "


# --------------------------------------------------------------------------- #
# Attractr errors
# --------------------------------------------------------------------------- #


class Level(Enum):
    attractr = "\033[34;1mattractr\033[0m"  # Blue
    info = "\033[33;1minfo\033[0m"  # Yellow / Orange
    warning = "\033[33;1mwarning\033[0m"  # Yellow / Orange
    error = "\033[31;1merror\033[0m"  # Red
    fatal = "\033[31;1mfatal\033[0m"  # Red


def attractr(message: str) -> None:
    """Log a message with the prefix "attractr", e.g. a run summary."""
    __log(Level.attractr, message, with_context=False)


def info(message: str) -> None:
    """Log a low-priority message, e.g. per-epoch progress."""
    config = Config()

    if ShowWarnings.low_priority not in config.arguments.show_warnings:
        return

    __log(Level.info, message)


def warning(message: str) -> None:
    """Log a warning and, if set, include the current environment and epoch."""
    config = Config()
    config.state.warnings_emitted += 1

    if ShowWarnings.high_priority not in config.arguments.show_warnings:
        return

    __log(Level.warning, message)


def error(message: str) -> None:
    """Log a recoverable error, fatal in `--strict` mode."""
    config = Config()
    config.state.errors_emitted += 1

    if config.arguments.is_strict:
        fatal(message)

    __log(Level.error, message)


def fatal(message: str, exit_code: int = EXIT_FAILURE) -> NoReturn:
    """Log a fatal error and exit with the given code."""
    __log(Level.fatal, message)

    sys.exit(exit_code)


def get_context_info() -> str:
    """Return the formatted environment / epoch context, or the empty string."""
    description = Config().context_description

    if description is None:
        return ""

    return __CONTEXT.format(description)


def __log(level: Level, message: str, *, with_context: bool = True) -> None:
    print(
        __ERROR.format(
            prefix=level.value,
            optional_context=get_context_info() if with_context else "",
            message=message,
        ),
        file=sys.stderr,
    )
