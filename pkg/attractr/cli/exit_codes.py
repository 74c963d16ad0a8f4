from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Final


EXIT_SUCCESS: Final = 0
EXIT_FAILURE: Final = 1
EXIT_CONFIG_ERROR: Final = 2
EXIT_IO_ERROR: Final = 3
EXIT_DIVERGED: Final = 4
