from __future__ import annotations

from contextlib import contextmanager
from typing import TYPE_CHECKING

from attractr.config._types import Config

if TYPE_CHECKING:
    from collections.abc import Generator


@contextmanager
def enter_environment(env_id: int | None) -> Generator[None, None, None]:
    """Set the config state's current environment while in scope.

    Diagnostics emitted through `attractr.error` within the block are prefixed with
    the environment, e.g. "warning: env 12: sinkhorn did not converge".

    >>> config = Config()
    >>> with enter_environment(12):
    ...     config.state.current_env
    12
    >>> config.state.current_env is None
    True
    """
    config = Config()

    old_env = config.state.current_env
    config.state.current_env = env_id

    try:
        yield
    finally:
        config.state.current_env = old_env


@contextmanager
def enter_epoch(epoch: int | None) -> Generator[None, None, None]:
    """Set the config state's current epoch while in scope."""
    config = Config()

    old_epoch = config.state.current_epoch
    config.state.current_epoch = epoch

    try:
        yield
    finally:
        config.state.current_epoch = old_epoch
