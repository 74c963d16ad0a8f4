from __future__ import annotations

from typing import TYPE_CHECKING

from attractr.cli.exit_codes import (
    EXIT_CONFIG_ERROR,
    EXIT_DIVERGED,
    EXIT_FAILURE,
    EXIT_IO_ERROR,
)

if TYPE_CHECKING:
    from collections.abc import Sequence


class AttractrError(Exception):
    """Base class of every error raised deliberately by attractr."""

    exit_code: int = EXIT_FAILURE


# --------------------------------------------------------------------------- #
# Configuration
# --------------------------------------------------------------------------- #


class ConfigurationError(AttractrError, ValueError):
    """A setting, argument or precondition is invalid."""

    exit_code = EXIT_CONFIG_ERROR


class PrimitiveShapeError(ConfigurationError):
    """Operand shapes do not conform for a differentiable primitive."""

    def __init__(self, primitive: str, *shapes: Sequence[int]) -> None:
        self.primitive = primitive
        self.shapes = tuple(tuple(s) for s in shapes)

        shapes_str = ", ".join(str(list(s)) for s in self.shapes)
        super().__init__(f"{primitive}: incompatible shapes {shapes_str}")


class MissingGradientError(AttractrError):
    """An optimiser step was requested for a parameter with no gradient."""

    def __init__(self, parameter: str) -> None:
        self.parameter = parameter
        super().__init__(f"parameter {parameter!r} has no gradient")


class ZeroNormTargetError(AttractrError, ZeroDivisionError):
    """A target frame of a relative error has zero norm."""

    exit_code = EXIT_CONFIG_ERROR


class SinkhornNaNError(AttractrError, FloatingPointError):
    """The transport cost matrix contains NaN."""

    exit_code = EXIT_DIVERGED


# --------------------------------------------------------------------------- #
# Persistence
# --------------------------------------------------------------------------- #


class DatasetFormatError(AttractrError):
    """A stored dataset or checkpoint does not match its metadata."""

    exit_code = EXIT_IO_ERROR


class FormatVersionError(DatasetFormatError):
    """The stored `format_version` is not supported."""


class ShapeMismatchError(DatasetFormatError):
    """The recorded shape disagrees with the recorded byte count."""


class TruncatedFileError(DatasetFormatError):
    """A raw array file is shorter or longer than recorded."""


class IntegrityError(DatasetFormatError):
    """A raw array file no longer matches its recorded hash."""


class RunDirectoryExistsError(AttractrError, FileExistsError):
    """The output directory is populated and `--force` was not given."""

    exit_code = EXIT_IO_ERROR


# --------------------------------------------------------------------------- #
# Divergence
# --------------------------------------------------------------------------- #


class DivergenceError(AttractrError, ArithmeticError):
    """A numerical process produced non-finite values."""

    exit_code = EXIT_DIVERGED


class IntegrationDivergedError(DivergenceError):
    """The reference integrator produced a non-finite state."""

    def __init__(self, step: int, env_id: int | None = None) -> None:
        self.step = step
        self.env_id = env_id

        where = f" (environment {env_id})" if env_id is not None else ""
        super().__init__(f"integration diverged at step {step}{where}")

    def with_env_id(self, env_id: int) -> IntegrationDivergedError:
        return IntegrationDivergedError(self.step, env_id)


class RolloutDivergedError(DivergenceError):
    """The emulator produced a non-finite state during a rollout."""

    def __init__(self, step: int) -> None:
        self.step = step
        super().__init__(f"rollout diverged at step {step}")


class TrainingDivergedError(DivergenceError):
    """The training loss became non-finite."""

    def __init__(self, epoch: int) -> None:
        self.epoch = epoch
        super().__init__(f"training loss is not finite at epoch {epoch}")
