from __future__ import annotations

from attractr.error.error import (
    attractr,
    error,
    fatal,
    get_context_info,
    info,
    warning,
)
from attractr.error.exc import (
    AttractrError,
    ConfigurationError,
    DatasetFormatError,
    DivergenceError,
    FormatVersionError,
    IntegrationDivergedError,
    IntegrityError,
    MissingGradientError,
    PrimitiveShapeError,
    RolloutDivergedError,
    RunDirectoryExistsError,
    ShapeMismatchError,
    SinkhornNaNError,
    TrainingDivergedError,
    TruncatedFileError,
    ZeroNormTargetError,
)

__all__ = [
    "AttractrError",
    "ConfigurationError",
    "DatasetFormatError",
    "DivergenceError",
    "FormatVersionError",
    "IntegrationDivergedError",
    "IntegrityError",
    "MissingGradientError",
    "PrimitiveShapeError",
    "RolloutDivergedError",
    "RunDirectoryExistsError",
    "ShapeMismatchError",
    "SinkhornNaNError",
    "TrainingDivergedError",
    "TruncatedFileError",
    "ZeroNormTargetError",
    "attractr",
    "error",
    "fatal",
    "get_context_info",
    "info",
    "warning",
]
