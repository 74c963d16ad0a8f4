from __future__ import annotations

# isort: off
from ._types import (
    Arguments,
    Command,
    Config,
    ShowWarnings,
    State,
)

__all__ = [
    "Arguments",
    "Command",
    "Config",
    "ShowWarnings",
    "State",
]
