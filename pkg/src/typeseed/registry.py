"""Type table and alias table: registration, aliasing, and resolution.

The registry maps lowercase type names to descriptors and alias names to
target names. Descriptors carry a construction-rule id that the generation
layer dispatches on; the registry itself never produces values.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    AliasCycleError,
    ArityError,
    TypeSyntaxError,
    UnresolvedTypeError,
    UnsupportedRecursionError,
)

log = logging.getLogger(__name__)

_NAME_RE = re.compile(r"[a-z0-9_.\-]+")


class TypeKind(str, Enum):
    NONPARAMETRIC = "nonparametric"
    PARAMETRIC = "parametric"
    UNION = "union"
    RECORD = "record"


@dataclass(frozen=True)
class TypeExpression:
    """A type reference: a head name plus zero or more argument expressions."""

    head: str
    args: tuple["TypeExpression", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.head
        return f"{self.head}[{','.join(str(a) for a in self.args)}]"

    def walk(self) -> Iterable["TypeExpression"]:
        """Yield this expression and every nested argument expression."""
        yield self
        for arg in self.args:
            yield from arg.walk()


def parse_type_expression(text: str) -> TypeExpression:
    """Parse ``name`` or ``name[expr, expr, ...]`` (nesting allowed).

    Input is lowercased first; whitespace around tokens is ignored. Names
    match [a-z0-9_.-]+. Arity is not checked here; it is enforced when the
    expression is resolved against a registry.
    """
    text = text.lower()
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_expr() -> TypeExpression:
        nonlocal pos
        skip_ws()
        m = _NAME_RE.match(text, pos)
        if not m:
            raise TypeSyntaxError("expected a type name", text, pos)
        head = m.group(0)
        pos = m.end()
        skip_ws()
        if pos < n and text[pos] == "[":
            pos += 1
            args = [parse_expr()]
            skip_ws()
            while pos < n and text[pos] == ",":
                pos += 1
                args.append(parse_expr())
                skip_ws()
            if pos >= n or text[pos] != "]":
                raise TypeSyntaxError("expected ',' or ']'", text, pos)
            pos += 1
            return TypeExpression(head, tuple(args))
        return TypeExpression(head)

    expr = parse_expr()
    skip_ws()
    if pos != n:
        raise TypeSyntaxError("trailing characters after type expression", text, pos)
    return expr


def as_type_expression(ty: "str | TypeExpression") -> TypeExpression:
    if isinstance(ty, TypeExpression):
        return ty
    return parse_type_expression(ty)


@dataclass(frozen=True)
class TypeDescriptor:
    """Registry entry for one type.

    ``rule`` names the construction rule the generation layer uses. For
    parametric types ``arity`` is the required argument count, or None for
    variadic heads (which then require at least ``min_arity`` arguments).
    """

    name: str
    kind: TypeKind
    rule: str
    arity: int | None = 0
    min_arity: int = 0
    members: tuple[TypeExpression, ...] = ()
    member_weights: tuple[int, ...] | None = None
    fields: tuple[tuple[str, TypeExpression], ...] = ()


class Registry:
    """Single-writer type table plus alias table.

    Mutation and generation must not interleave on the same instance; take
    a ``copy()`` when a frozen snapshot is needed.
    """

    def __init__(self) -> None:
        self._types: dict[str, TypeDescriptor] = {}
        self._aliases: dict[str, str] = {}

    # -- registration -------------------------------------------------

    def add_nonparametric_type(self, name: str, rule: str) -> None:
        """Register a zero-argument type; re-registration overwrites."""
        self._put(TypeDescriptor(self._key(name), TypeKind.NONPARAMETRIC, rule))

    def add_parametric_type(
        self, name: str, arity: int | None, rule: str, *, min_arity: int = 1
    ) -> None:
        """Register a type constructor; ``arity=None`` means variadic."""
        if arity is not None and arity < 1:
            raise ValueError(f"parametric arity must be >= 1, got {arity}")
        self._put(
            TypeDescriptor(
                self._key(name),
                TypeKind.PARAMETRIC,
                rule,
                arity=arity,
                min_arity=min_arity if arity is None else arity,
            )
        )

    def add_alias_type(self, alias: str, target: str) -> None:
        """Map ``alias`` to ``target``; rejects cycles of any length."""
        alias_key = self._key(alias)
        target_key = self._key(target)
        if alias_key == target_key:
            raise ValueError(f"alias {alias_key!r} cannot target itself")
        if alias_key in self._types:
            raise ValueError(
                f"{alias_key!r} already names a registered type; aliases may "
                "not shadow type names"
            )
        # Walk the chain starting at the target; reaching the alias again
        # means the insertion would close a cycle.
        chain = [alias_key, target_key]
        cursor = target_key
        while cursor in self._aliases:
            cursor = self._aliases[cursor]
            chain.append(cursor)
            if cursor == alias_key:
                raise AliasCycleError(chain)
        self._aliases[alias_key] = target_key

    def register_union(
        self,
        name: str,
        members: Sequence["str | TypeExpression"],
        weights: Sequence[int] | None = None,
    ) -> None:
        """Register a named union; generation picks a member then recurses.

        Members default to equal probability; pass ``weights`` to bias the
        choice (one positive integer per member).
        """
        if len(members) < 2:
            raise ValueError("a union needs at least 2 members")
        exprs = tuple(as_type_expression(m) for m in members)
        for expr in exprs:
            self.check_expression(expr)
        if weights is not None:
            if len(weights) != len(exprs):
                raise ValueError("one weight per member required")
            if any(w <= 0 for w in weights):
                raise ValueError("union weights must be positive")
            weights = tuple(weights)
        self._put(
            TypeDescriptor(
                self._key(name),
                TypeKind.UNION,
                "union",
                members=exprs,
                member_weights=weights,
            )
        )

    def register_record(
        self,
        qualified_name: str,
        fields: Sequence[tuple[str, "str | TypeExpression"]],
    ) -> None:
        """Register a record (a named product of typed fields).

        Every field type must already resolve, and none may mention the
        record itself. Re-registering with different fields overwrites but
        logs a warning; an identical re-registration is silent.
        """
        key = self._key(qualified_name)
        parsed = tuple((fname, as_type_expression(fty)) for fname, fty in fields)
        for fname, fty in parsed:
            for sub in fty.walk():
                if self._chase(sub.head) == key or sub.head == key:
                    raise UnsupportedRecursionError(
                        f"record {key!r} refers to itself via field {fname!r}"
                    )
            self.check_expression(fty)
        existing = self._types.get(key)
        if (
            existing is not None
            and existing.kind is TypeKind.RECORD
            and existing.fields != parsed
        ):
            log.warning("record %r re-registered with different fields", key)
        self._put(
            TypeDescriptor(key, TypeKind.RECORD, "record", fields=parsed)
        )

    # -- resolution ---------------------------------------------------

    def resolve(self, name: str) -> TypeDescriptor:
        """Follow the alias chain from ``name`` to a descriptor."""
        key = self._chase(self._key(name))
        desc = self._types.get(key)
        if desc is None:
            raise UnresolvedTypeError(name)
        return desc

    def check_expression(self, ty: "str | TypeExpression") -> TypeExpression:
        """Resolve every head in ``ty`` and enforce declared arities."""
        expr = as_type_expression(ty)
        desc = self.resolve(expr.head)
        if desc.kind is TypeKind.PARAMETRIC:
            if desc.arity is None:
                if len(expr.args) < desc.min_arity:
                    raise ArityError(
                        f"{desc.name!r} needs at least {desc.min_arity} "
                        f"argument(s), got {len(expr.args)}"
                    )
            elif len(expr.args) != desc.arity:
                raise ArityError(
                    f"{desc.name!r} takes {desc.arity} argument(s), "
                    f"got {len(expr.args)}"
                )
        elif expr.args:
            raise ArityError(f"{desc.name!r} takes no arguments")
        for arg in expr.args:
            self.check_expression(arg)
        return expr

    def is_resolvable(self, ty: "str | TypeExpression") -> bool:
        try:
            self.check_expression(ty)
        except (UnresolvedTypeError, ArityError, TypeSyntaxError):
            return False
        return True

    # -- views --------------------------------------------------------

    def type_names(self) -> list[str]:
        return sorted(self._types)

    def descriptors(self) -> list[TypeDescriptor]:
        return [self._types[k] for k in sorted(self._types)]

    def aliases(self) -> dict[str, str]:
        return dict(self._aliases)

    def copy(self) -> "Registry":
        clone = Registry()
        clone._types = dict(self._types)
        clone._aliases = dict(self._aliases)
        return clone

    # -- internals ----------------------------------------------------

    @staticmethod
    def _key(name: str) -> str:
        key = name.strip().lower()
        if not key:
            raise ValueError("type names must be non-empty")
        return key

    def _put(self, desc: TypeDescriptor) -> None:
        if desc.name in self._aliases:
            raise ValueError(
                f"{desc.name!r} is an alias; type names may not shadow aliases"
            )
        self._types[desc.name] = desc

    def _chase(self, key: str) -> str:
        # Acyclicity is enforced at insertion, so this terminates.
        while key in self._aliases:
            key = self._aliases[key]
        return key


def init_types() -> Registry:
    """Build the base registry: primitive types, containers, and aliases."""
    reg = Registry()
    reg.add_nonparametric_type("integer", "int")
    reg.add_alias_type("int", "integer")
    reg.add_nonparametric_type("float", "float")
    reg.add_nonparametric_type("bool", "bool")
    reg.add_nonparametric_type("unicode-codepoint-string", "str")
    reg.add_alias_type("unicode", "unicode-codepoint-string")
    reg.add_alias_type("str", "unicode-codepoint-string")
    reg.add_alias_type("boolean", "bool")
    reg.add_parametric_type("list", 1, "list")
    reg.add_parametric_type("dictionary", 2, "dict")
    reg.add_parametric_type("fixedtuple", None, "tuple", min_arity=1)
    reg.add_nonparametric_type("nonetype", "none")
    reg.add_nonparametric_type("bytes", "bytes")
    # Anonymous unions are spelled structurally: union[a,b,...].
    reg.add_parametric_type("union", None, "union", min_arity=2)
    return reg
