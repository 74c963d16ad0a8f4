from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

from cattrs.preconf.json import make_converter
from frozendict import frozendict

if TYPE_CHECKING:
    from typing import Any, TypeVar

    from cattrs.converters import Converter

    T = TypeVar("T")


def make_json_converter() -> Converter:
    """Return the converter used for every JSON file attractr writes.

    On top of the preconfigured JSON converter, paths are stored as strings and
    `frozendict` mappings as plain objects.
    """
    converter = make_converter()

    converter.register_unstructure_hook(Path, str)
    converter.register_structure_hook(Path, lambda data, _: Path(data))

    converter.register_unstructure_hook_func(
        lambda cls: cls is frozendict or getattr(cls, "__origin__", None) is frozendict,
        lambda mapping: {str(k): converter.unstructure(v) for k, v in mapping.items()},
    )
    converter.register_structure_hook_func(
        lambda cls: cls is frozendict or getattr(cls, "__origin__", None) is frozendict,
        _structure_frozendict(converter),
    )

    return converter


def _structure_frozendict(converter: Converter):
    def structure_frozendict(data: dict[str, Any], cls: Any) -> frozendict:
        args = getattr(cls, "__args__", None)

        if not args:
            return frozendict(data)

        key_type, value_type = args
        return frozendict(
            {
                converter.structure(k, key_type): converter.structure(v, value_type)
                for k, v in data.items()
            }
        )

    return structure_frozendict


__json_converter = make_json_converter()


def serialise(model: Any, **kwargs: Any) -> str:
    return __json_converter.dumps(model, **kwargs)  # type: ignore[reportUnknownMemberType]


def deserialise(json: str, *, type: type[T], **kwargs: Any) -> T:
    return __json_converter.loads(json, cl=type, **kwargs)  # type: ignore[reportUnknownMemberType]


def write_json(path: Path, model: Any) -> None:
    """Serialise the model to the given path, with stable key order."""
    path.write_text(serialise(model, indent=4, sort_keys=True) + "\n")


def read_json(path: Path, *, type: type[T]) -> T:
    return deserialise(path.read_text(), type=type)
