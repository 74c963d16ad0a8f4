from __future__ import annotations

from attractr.util.hash import hash_bytes, hash_file_content
from attractr.util.serialise import (
    deserialise,
    make_json_converter,
    read_json,
    serialise,
    write_json,
)
from attractr.util.table import (
    CsvLog,
    as_row,
    fieldnames_of,
    read_rows,
    write_rows,
)

__all__ = [
    "CsvLog",
    "as_row",
    "deserialise",
    "fieldnames_of",
    "hash_bytes",
    "hash_file_content",
    "make_json_converter",
    "read_json",
    "read_rows",
    "serialise",
    "write_json",
    "write_rows",
]
