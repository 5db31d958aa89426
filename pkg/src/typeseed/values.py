"""The generated-value model.

Values are ordinary Python objects where possible (int, str, bytes, bool,
None, list, tuple). Floats are exact: a ``Fraction`` or one of the four
``FloatSpecial`` singletons; binary floats never appear in the model, so no
information is lost before a consumer decides how to round. Maps and records
get small wrapper classes because their semantics differ from dict/object
(map keys may be unhashable; record fields are ordered and named).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Hashable, Union


class FloatSpecial(Enum):
    """The non-rational float values, tagged rather than IEEE-encoded."""

    NAN = "nan"
    POS_INF = "inf"
    NEG_INF = "-inf"
    NEG_ZERO = "-0"


FloatValue = Union[Fraction, FloatSpecial]


@dataclass
class MapValue:
    """A dictionary value: an ordered sequence of (key, value) pairs.

    Keys are mutually distinct under structural equality. A plain dict
    cannot hold these because generated keys may be unhashable (lists,
    other maps).
    """

    entries: list[tuple["GeneratedValue", "GeneratedValue"]]


@dataclass
class RecordValue:
    """An instance of a registered record type, fields in declared order."""

    class_name: str
    fields: list[tuple[str, "GeneratedValue"]]


GeneratedValue = Union[
    int,
    Fraction,
    FloatSpecial,
    str,
    bytes,
    bool,
    None,
    list,
    tuple,
    MapValue,
    RecordValue,
]


def kind_of(v: GeneratedValue) -> str:
    """The value's structural kind tag. bool is checked before int."""
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, (Fraction, FloatSpecial)):
        return "float"
    if isinstance(v, str):
        return "str"
    if isinstance(v, bytes):
        return "bytes"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "list"
    if isinstance(v, tuple):
        return "tuple"
    if isinstance(v, MapValue):
        return "map"
    if isinstance(v, RecordValue):
        return "record"
    raise TypeError(f"not a generated value: {type(v).__name__}")


def value_token(v: GeneratedValue) -> Hashable:
    """A hashable token equal iff two values are structurally equal.

    Python's own ``==`` conflates 1, True, and Fraction(1); tokens embed the
    kind tag so map-key distinctness treats them as different values.
    """
    kind = kind_of(v)
    if kind == "float":
        if isinstance(v, FloatSpecial):
            return ("float", v.value)
        return ("float", v.numerator, v.denominator)
    if kind in ("bool", "int", "str", "bytes"):
        return (kind, v)
    if kind == "none":
        return ("none",)
    if kind in ("list", "tuple"):
        return (kind, tuple(value_token(x) for x in v))
    if kind == "map":
        return ("map", tuple((value_token(k), value_token(x)) for k, x in v.entries))
    return (
        "record",
        v.class_name,
        tuple((name, value_token(x)) for name, x in v.fields),
    )


def values_equal(a: GeneratedValue, b: GeneratedValue) -> bool:
    """Structural equality; NaN equals NaN (values are tags, not IEEE)."""
    return value_token(a) == value_token(b)
