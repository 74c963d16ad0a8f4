from __future__ import annotations

from enum import Enum


class TomlArgumentType(Enum):
    flag = "bool"
    """I.e. a boolean flag.

    In toml:
        variable=true

    In sys argument list:
        --variable

    For negatable flags `variable=false` becomes `--no-variable`.
    """

    int = "int"
    """I.e. a single int value.

    In toml:
        variable=42

    In sys argument list:
        --variable 42
    """

    float = "float"
    """I.e. a single number, ints are accepted.

    In toml:
        variable=0.25

    In sys argument list:
        --variable 0.25
    """

    string = "str"
    """I.e. a single string value.

    In toml:
        variable="some value"

    In sys argument list:
        --variable "some value"
    """

    list_of_floats = "list[float]"
    """I.e. several numbers given to one flag.

    In toml:
        variable=[10.0, 18.0]

    In sys argument list:
        --variable 10.0 18.0
    """

    list_of_ints = "list[int]"
    """I.e. several ints given to one flag.

    In toml:
        variable=[100, 1500]

    In sys argument list:
        --variable 100 1500
    """

    def __str__(self) -> str:
        return self.value

    def is_valid(self, value: object) -> bool:
        if self == TomlArgumentType.flag:
            return isinstance(value, bool)

        if self == TomlArgumentType.int:
            return isinstance(value, int) and not isinstance(value, bool)

        if self == TomlArgumentType.float:
            return _is_number(value)

        if self == TomlArgumentType.string:
            return isinstance(value, str)

        if self == TomlArgumentType.list_of_floats:
            return (
                isinstance(value, list)
                and len(value) > 0
                and all(_is_number(v) for v in value)
            )

        if self == TomlArgumentType.list_of_ints:
            return (
                isinstance(value, list)
                and len(value) > 0
                and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
            )

        raise NotImplementedError


def _is_number(value: object) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)
