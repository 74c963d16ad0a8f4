from __future__ import annotations

from shutil import get_terminal_size
from textwrap import dedent, fill
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Any


_ARGPARSE_INDENT = 24
_MINIMUM_WIDTH = 16


def _help_width() -> int:
    columns = get_terminal_size(fallback=(80, 32)).columns

    if columns - _ARGPARSE_INDENT >= 32:
        return columns - _ARGPARSE_INDENT

    return columns


def multi_paragraph_wrap(text: str, width: int | None = None) -> str:
    """Return the given help text dedented and wrapped paragraph by paragraph.

    Paragraphs are separated by a blank line. Paragraphs whose lines begin with ">"
    keep their line breaks and relative indentation (the ">" is dropped), e.g. for
    choices and "TOML example:" lines.

    Raises:
        SyntaxError: A line of a preserved paragraph is missing its ">".
    """
    width = max(width if width is not None else _help_width(), _MINIMUM_WIDTH)

    def _preserve(paragraph: str) -> str:
        lines = []

        for line in paragraph.splitlines():
            if not line.startswith(">"):
                raise SyntaxError("preserved lines must start with '>'")
            lines.append(line[1:])

        return "\n".join(
            fill(line, width) for line in dedent("\n".join(lines)).splitlines()
        )

    paragraphs = [
        _preserve(p) if p.startswith(">") else fill(p, width)
        for p in dedent(text).split("\n\n")
    ]
    return "\n\n".join(paragraphs)


def get_type_name(value: Any) -> str:
    """Return a TOML-ish name for the type of the given value, e.g. "list[str]"."""
    if isinstance(value, list):
        names = sorted({type(v).__name__ for v in value})
        return f"list[{' | '.join(names)}]"

    if isinstance(value, dict):
        return "table"

    return type(value).__name__
