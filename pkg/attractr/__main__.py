#!/usr/bin/env python3
"""Attractr entry point."""
from __future__ import annotations

import sys
from typing import TYPE_CHECKING

from attractr import error
from attractr.cli.parser import parse_arguments
from attractr.commands import COMMANDS
from attractr.config import Config, State
from attractr.error.exc import AttractrError

if TYPE_CHECKING:
    from typing import NoReturn


def _init_attractr_config() -> Config:
    return Config(arguments=parse_arguments(), state=State())


def main(config: Config) -> int:
    """Run the parsed subcommand."""
    command = config.arguments.command

    if command is None:
        error.fatal("no command given, see --help")

    return COMMANDS[command](config)


def entry_point() -> NoReturn:
    """Entry point for command line app."""
    config = _init_attractr_config()

    try:
        exit_code = main(config)
    except AttractrError as exc:
        error.fatal(str(exc), exc.exit_code)

    sys.exit(exit_code)


if __name__ == "__main__":
    entry_point()
