from __future__ import annotations

import argparse
from dataclasses import dataclass
from enum import Enum, IntFlag, auto
from pathlib import Path
from typing import TYPE_CHECKING

from attractr.config._util import validate_arguments

if TYPE_CHECKING:
    from typing import Any, Final, Literal, overload


class ShowWarnings(IntFlag):
    high_priority = auto()
    low_priority = auto()


class Command(Enum):
    generate = "generate"
    train_encoder = "train-encoder"
    train = "train"
    eval = "eval"
    sweep = "sweep"
    select_lambda = "select-lambda"
    robustness = "robustness"

    def __str__(self) -> str:
        return self.value


class Arguments(argparse.Namespace):
    """The parsed arguments, experiment TOML first then overridden by the CLI.

    Experiment settings keep their flag name with `-` replaced by `_`, e.g.
    `--phi-range` is `phi_range`. Unset settings are `None` and resolved to the
    system defaults by `ExperimentConfig.from_arguments`.
    """

    command: Command | None = None

    experiment_toml: Path | None = None
    """From `[-c PATH | --config PATH]`."""

    _warning_level: Literal["none", "default", "all"] = "default"
    is_strict: bool = False
    workers: int | None = None

    # Subcommand specific
    checkpoint: Path | None = None
    stepper: str = "emulator"
    grid: str | None = None
    sweep_dir: Path | None = None

    @property
    def show_warnings(self) -> ShowWarnings:
        if self._warning_level == "none":
            return ShowWarnings(0)
        if self._warning_level == "default":
            return ShowWarnings.high_priority
        if self._warning_level == "all":
            return ShowWarnings.high_priority | ShowWarnings.low_priority
        raise NotImplementedError

    def settings(self) -> dict[str, Any]:
        """Return the experiment settings which have been given a value."""
        return {
            key: value
            for key, value in vars(self).items()
            if not key.startswith("_") and value is not None
        }


@dataclass
class State:
    current_env: int | None = None
    current_epoch: int | None = None

    warnings_emitted: int = 0
    errors_emitted: int = 0

    @property
    def has_context(self) -> bool:
        return self.current_env is not None or self.current_epoch is not None


class ConfigMetaclass(type):
    """Metaclass allowing `Config` to act as a singleton."""

    _instance: Config | None = None

    def __call__(cls, *args: Any, **kwargs: Any):
        if cls._instance is None:
            if not args and not kwargs:
                kwargs = {"arguments": Arguments(), "state": State()}
            _instance: Config = super().__call__(*args, **kwargs)
            cls._instance = _instance
            cls._instance.arguments = validate_arguments(cls._instance.arguments)
        return cls._instance

    def reset(cls) -> None:
        """Forget the singleton, the next `Config(...)` call creates a new one."""
        cls._instance = None


@dataclass
class Config(metaclass=ConfigMetaclass):
    """The global config singleton."""

    arguments: Arguments
    state: State

    RUN_SUMMARY_FILE: Final = "run.json"
    TRAINING_LOG_FILE: Final = "log.csv"
    CHECKPOINT_DIR: Final = "checkpoint"

    if TYPE_CHECKING:

        @overload
        def __init__(self) -> None:  # type: ignore[reportNoOverloadImplementation]
            ...

        @overload
        def __init__(  # type: ignore[reportNoOverloadImplementation]
            self,
            arguments: Arguments,
            state: State,
        ) -> None:
            ...

    @property
    def do_not_show_warnings(self) -> bool:
        return self.arguments.show_warnings == ShowWarnings(0)

    @property
    def show_progress(self) -> bool:
        return not self.do_not_show_warnings

    @property
    def context_description(self) -> str | None:
        """Return e.g. "env 12, epoch 3" from the current state, if any."""
        parts: list[str] = []

        if self.state.current_env is not None:
            parts.append(f"env {self.state.current_env}")
        if self.state.current_epoch is not None:
            parts.append(f"epoch {self.state.current_epoch}")

        return ", ".join(parts) if parts else None
