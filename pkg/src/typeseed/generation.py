"""Value generation and membership checking for registered type expressions."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from . import primitives
from .errors import InternalError
from .registry import Registry, TypeExpression, TypeKind
from .rng import RandomState, TraceSink, next_uniform, weighted_switch
from .values import (
    FloatSpecial,
    GeneratedValue,
    MapValue,
    RecordValue,
    value_token,
)

#: Containers hold at most this many elements; deep nesting multiplies sizes.
MAX_CONTAINER_LENGTH = 64

#: Attempts to replace a colliding dictionary key before dropping the entry.
KEY_RESAMPLE_ATTEMPTS = 16

# Generation never recurses deeper than registered type structure allows;
# records cannot be self-referential, so this guard should be unreachable.
_MAX_DEPTH = 500


def generate_value(
    reg: Registry,
    ty: "str | TypeExpression",
    state: RandomState,
    trace: Optional[TraceSink] = None,
) -> Tuple[GeneratedValue, RandomState]:
    """Generate one value conforming to ``ty``; threads the state through."""
    expr = reg.check_expression(ty)
    return _generate(reg, expr, state, trace, 0)


def generate_examples(
    reg: Registry,
    ty: "str | TypeExpression",
    n: int,
    state: RandomState,
    trace: Optional[TraceSink] = None,
) -> Tuple[List[GeneratedValue], RandomState]:
    """Generate exactly ``n`` values of ``ty``, state threaded left to right."""
    if n < 0:
        raise ValueError(f"example count must be >= 0, got {n}")
    expr = reg.check_expression(ty)
    out = []
    for _ in range(n):
        v, state = _generate(reg, expr, state, trace, 0)
        out.append(v)
    return out, state


def _generate(
    reg: Registry,
    expr: TypeExpression,
    state: RandomState,
    trace: Optional[TraceSink],
    depth: int,
) -> Tuple[GeneratedValue, RandomState]:
    if depth > _MAX_DEPTH:
        raise InternalError(f"generation recursion exceeded {_MAX_DEPTH} levels")
    desc = reg.resolve(expr.head)
    rule = desc.rule

    if rule == "int":
        return primitives.enum_int(state, trace)
    if rule == "float":
        return primitives.enum_float(state, trace)
    if rule == "str":
        return primitives.enum_string(state, trace)
    if rule == "bytes":
        return primitives.enum_bytes(state)
    if rule == "bool":
        return primitives.enum_bool(state)
    if rule == "none":
        return primitives.enum_none(state)

    if rule == "list":
        length, state = primitives.draw_length(state, cap=MAX_CONTAINER_LENGTH)
        elem = expr.args[0]
        items = []
        for _ in range(length):
            v, state = _generate(reg, elem, state, trace, depth + 1)
            items.append(v)
        return items, state

    if rule == "dict":
        length, state = primitives.draw_length(state, cap=MAX_CONTAINER_LENGTH)
        key_ty, val_ty = expr.args
        entries = []
        seen = set()
        for _ in range(length):
            key, state = _generate(reg, key_ty, state, trace, depth + 1)
            token = value_token(key)
            attempts = 0
            while token in seen and attempts < KEY_RESAMPLE_ATTEMPTS:
                key, state = _generate(reg, key_ty, state, trace, depth + 1)
                token = value_token(key)
                attempts += 1
            if token in seen:
                continue  # key space exhausted; emit a smaller map
            seen.add(token)
            value, state = _generate(reg, val_ty, state, trace, depth + 1)
            entries.append((key, value))
        return MapValue(entries), state

    if rule == "tuple":
        items = []
        for arg in expr.args:
            v, state = _generate(reg, arg, state, trace, depth + 1)
            items.append(v)
        return tuple(items), state

    if rule == "union":
        if desc.kind is TypeKind.UNION:
            members = desc.members
            weights = desc.member_weights
        else:
            members = expr.args
            weights = None
        if weights is None:
            i, state = next_uniform(state, len(members))
        else:
            i, state = weighted_switch(state, weights)
        return _generate(reg, members[i], state, trace, depth + 1)

    if rule == "record":
        fields = []
        for fname, fty in desc.fields:
            v, state = _generate(reg, fty, state, trace, depth + 1)
            fields.append((fname, v))
        return RecordValue(desc.name, fields), state

    raise InternalError(f"descriptor {desc.name!r} has unknown rule {rule!r}")


def is_member(reg: Registry, v: GeneratedValue, ty: "str | TypeExpression") -> bool:
    """True iff ``v`` structurally conforms to ``ty``, recursively."""
    expr = reg.check_expression(ty)
    return _member(reg, v, expr)


def _member(reg: Registry, v: GeneratedValue, expr: TypeExpression) -> bool:
    desc = reg.resolve(expr.head)
    rule = desc.rule

    if rule == "int":
        return isinstance(v, int) and not isinstance(v, bool)
    if rule == "float":
        return isinstance(v, (Fraction, FloatSpecial))
    if rule == "str":
        return isinstance(v, str)
    if rule == "bytes":
        return isinstance(v, bytes)
    if rule == "bool":
        return isinstance(v, bool)
    if rule == "none":
        return v is None

    if rule == "list":
        return isinstance(v, list) and all(_member(reg, x, expr.args[0]) for x in v)

    if rule == "dict":
        if not isinstance(v, MapValue):
            return False
        key_ty, val_ty = expr.args
        tokens = set()
        for key, value in v.entries:
            if not _member(reg, key, key_ty) or not _member(reg, value, val_ty):
                return False
            token = value_token(key)
            if token in tokens:
                return False  # duplicate keys violate the map invariant
            tokens.add(token)
        return True

    if rule == "tuple":
        if not isinstance(v, tuple) or len(v) != len(expr.args):
            return False
        return all(_member(reg, x, arg) for x, arg in zip(v, expr.args))

    if rule == "union":
        members = desc.members if desc.kind is TypeKind.UNION else expr.args
        return any(_member(reg, v, m) for m in members)

    if rule == "record":
        if not isinstance(v, RecordValue) or v.class_name != desc.name:
            return False
        if len(v.fields) != len(desc.fields):
            return False
        for (name, value), (dname, dty) in zip(v.fields, desc.fields):
            if name != dname or not _member(reg, value, dty):
                return False
        return True

    raise InternalError(f"descriptor {desc.name!r} has unknown rule {rule!r}")
