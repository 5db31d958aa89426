"""JSON wire format for generated values.

Integers travel as decimal strings so arbitrary precision survives JSON
parsers that use binary doubles. Floats travel as exact {num, den} pairs or
a tagged special; rounding is the consumer's decision. The encoder is
canonical: one byte sequence per value (compact separators, escaped ASCII,
record fields in declared order).

Schema, by tag:
    {"t":"int","v":"-42"}
    {"t":"float","num":"3","den":"2"}   or   {"t":"float","special":"nan"}
    {"t":"str","v":"..."}               specials: "nan" | "inf" | "-inf" | "-0"
    {"t":"bytes","v":[0,255,...]}
    {"t":"bool","v":true}
    {"t":"none"}
    {"t":"list","v":[...]}
    {"t":"tuple","v":[...]}
    {"t":"map","v":[[key,value],...]}
    {"t":"record","class":"m.c","fields":{"a":...,"b":...}}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .errors import WireDecodeError
from .values import (
    FloatSpecial,
    GeneratedValue,
    MapValue,
    RecordValue,
    value_token,
)

_INT_RE = re.compile(r"-?[0-9]+\Z")
_SURROGATE_RE = re.compile("[\ud800-\udfff]")

_SPECIAL_BY_WIRE = {s.value: s for s in FloatSpecial}


def to_jsonable(v: GeneratedValue) -> dict:
    """Encode a value as JSON-ready dicts/lists (no custom types left)."""
    if isinstance(v, bool):
        return {"t": "bool", "v": v}
    if isinstance(v, int):
        return {"t": "int", "v": str(v)}
    if isinstance(v, Fraction):
        return {"t": "float", "num": str(v.numerator), "den": str(v.denominator)}
    if isinstance(v, FloatSpecial):
        return {"t": "float", "special": v.value}
    if isinstance(v, str):
        return {"t": "str", "v": v}
    if isinstance(v, bytes):
        return {"t": "bytes", "v": list(v)}
    if v is None:
        return {"t": "none"}
    if isinstance(v, list):
        return {"t": "list", "v": [to_jsonable(x) for x in v]}
    if isinstance(v, tuple):
        return {"t": "tuple", "v": [to_jsonable(x) for x in v]}
    if isinstance(v, MapValue):
        return {
            "t": "map",
            "v": [[to_jsonable(k), to_jsonable(x)] for k, x in v.entries],
        }
    if isinstance(v, RecordValue):
        return {
            "t": "record",
            "class": v.class_name,
            "fields": {name: to_jsonable(x) for name, x in v.fields},
        }
    raise TypeError(f"not a generated value: {type(v).__name__}")


def encode_value(v: GeneratedValue) -> str:
    """Canonical JSON text for a value."""
    return json.dumps(to_jsonable(v), separators=(",", ":"), ensure_ascii=True)


def decode_value(text: "str | bytes") -> GeneratedValue:
    """Parse wire text back into a value; inverse of ``encode_value``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WireDecodeError(f"invalid JSON: {exc}") from None
    return from_jsonable(obj)


def from_jsonable(obj: Any, path: str = "$") -> GeneratedValue:
    """Decode parsed JSON into a value, validating against the schema."""
    if not isinstance(obj, dict):
        raise WireDecodeError("expected an object", path)
    tag = obj.get("t")
    if tag == "int":
        return _decode_int_text(obj.get("v"), path)
    if tag == "float":
        return _decode_float(obj, path)
    if tag == "str":
        v = obj.get("v")
        if not isinstance(v, str):
            raise WireDecodeError("str value must be a JSON string", path)
        if _SURROGATE_RE.search(v):
            raise WireDecodeError("string contains surrogate codepoints", path)
        return v
    if tag == "bytes":
        v = obj.get("v")
        if not isinstance(v, list):
            raise WireDecodeError("bytes value must be an array", path)
        for i, b in enumerate(v):
            if not isinstance(b, int) or isinstance(b, bool) or not 0 <= b <= 255:
                raise WireDecodeError("byte out of range", f"{path}.v[{i}]")
        return bytes(v)
    if tag == "bool":
        v = obj.get("v")
        if not isinstance(v, bool):
            raise WireDecodeError("bool value must be true or false", path)
        return v
    if tag == "none":
        return None
    if tag == "list" or tag == "tuple":
        v = obj.get("v")
        if not isinstance(v, list):
            raise WireDecodeError(f"{tag} value must be an array", path)
        items = [from_jsonable(x, f"{path}.v[{i}]") for i, x in enumerate(v)]
        return items if tag == "list" else tuple(items)
    if tag == "map":
        return _decode_map(obj, path)
    if tag == "record":
        return _decode_record(obj, path)
    raise WireDecodeError(f"unknown tag {tag!r}", path)


def _decode_int_text(v: Any, path: str) -> int:
    if not isinstance(v, str) or not _INT_RE.match(v):
        raise WireDecodeError("int value must be a decimal string", path)
    return int(v)


def _decode_float(obj: dict, path: str) -> GeneratedValue:
    if "special" in obj:
        special = _SPECIAL_BY_WIRE.get(obj["special"])
        if special is None:
            raise WireDecodeError(
                f"unknown float special {obj['special']!r}", f"{path}.special"
            )
        return special
    num = _decode_int_text(obj.get("num"), f"{path}.num")
    den = _decode_int_text(obj.get("den"), f"{path}.den")
    if den <= 0:
        raise WireDecodeError("denominator must be positive", f"{path}.den")
    return Fraction(num, den)


def _decode_map(obj: dict, path: str) -> MapValue:
    v = obj.get("v")
    if not isinstance(v, list):
        raise WireDecodeError("map value must be an array of pairs", path)
    entries = []
    tokens = set()
    for i, pair in enumerate(v):
        if not isinstance(pair, list) or len(pair) != 2:
            raise WireDecodeError("map entry must be a [key, value] pair", f"{path}.v[{i}]")
        key = from_jsonable(pair[0], f"{path}.v[{i}][0]")
        value = from_jsonable(pair[1], f"{path}.v[{i}][1]")
        token = value_token(key)
        if token in tokens:
            raise WireDecodeError("duplicate map key", f"{path}.v[{i}][0]")
        tokens.add(token)
        entries.append((key, value))
    return MapValue(entries)


def _decode_record(obj: dict, path: str) -> RecordValue:
    class_name = obj.get("class")
    if not isinstance(class_name, str) or not class_name:
        raise WireDecodeError("record class must be a non-empty string", f"{path}.class")
    if class_name != class_name.lower():
        raise WireDecodeError("record class must be lowercase", f"{path}.class")
    fields_obj = obj.get("fields")
    if not isinstance(fields_obj, dict):
        raise WireDecodeError("record fields must be an object", f"{path}.fields")
    fields = [
        (name, from_jsonable(value, f"{path}.fields.{name}"))
        for name, value in fields_obj.items()
    ]
    return RecordValue(class_name, fields)
