"""CSV tables with a header row, e.g. training logs and evaluation reports."""

from __future__ import annotations

import csv
from typing import TYPE_CHECKING

import attrs

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence
    from pathlib import Path
    from typing import Any, TextIO


def as_row(row: Any) -> Mapping[str, Any]:
    """Return the column mapping of an attrs instance or mapping."""
    if attrs.has(type(row)):
        return attrs.asdict(row, recurse=False)
    return row


def fieldnames_of(cls: type) -> list[str]:
    return [field.name for field in attrs.fields(cls)]


def write_rows(
    path: Path,
    rows: Iterable[Any],
    fieldnames: Sequence[str],
) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(fieldnames))
        writer.writeheader()
        writer.writerows(as_row(row) for row in rows)


def read_rows(path: Path) -> list[dict[str, str]]:
    with path.open(newline="") as f:
        return list(csv.DictReader(f))


class CsvLog:
    """A CSV file written row by row, flushed so partial runs keep their log.

    >>> with CsvLog(path, ["epoch", "loss"]) as log:  # doctest: +SKIP
    ...     log.write({"epoch": 0, "loss": 1.0})
    """

    def __init__(self, path: Path, fieldnames: Sequence[str]) -> None:
        self.path = path
        self.fieldnames = list(fieldnames)
        self.rows_written = 0
        self._file: TextIO | None = None
        self._writer: csv.DictWriter | None = None

    def __enter__(self) -> CsvLog:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._file = self.path.open("w", newline="")
        self._writer = csv.DictWriter(self._file, fieldnames=self.fieldnames)
        self._writer.writeheader()
        return self

    def __exit__(self, *_: object) -> None:
        if self._file is not None:
            self._file.close()
        self._file = None
        self._writer = None

    def write(self, row: Any) -> None:
        if self._writer is None or self._file is None:
            raise RuntimeError("CsvLog.write called outside of its context")

        self._writer.writerow(as_row(row))
        self._file.flush()
        self.rows_written += 1
