from __future__ import annotations

import argparse
import sys as _sys
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import NoReturn


class ArgumentParser(argparse.ArgumentParser):
    """An argument parser which raises instead of exiting when asked to.

    With `exit_on_error=False` every failure, missing arguments and bad choices
    included, raises `argparse.ArgumentError`, so that errors in the experiment
    TOML can be reported as such.
    """

    def error(self, message: str) -> NoReturn:
        if not self.exit_on_error:
            raise argparse.ArgumentError(None, message)

        super().error(message)

    def exit(self, status: int = 0, message: str | None = None) -> NoReturn:
        if not self.exit_on_error:
            raise argparse.ArgumentError(None, (message or "").strip())

        if message:
            self._print_message(message, _sys.stderr)

        _sys.exit(status)
