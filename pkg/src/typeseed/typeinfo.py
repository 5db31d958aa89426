"""Ingesting extracted codebase facts and registering user-defined types.

A TypeInfo document carries class attribute types, class method signatures,
and top-level function signatures. Registration runs repeated passes over
the classes, admitting each one as a record once every type it mentions
resolves, until a pass admits nothing (a fixed point) or the iteration
budget runs out. Function extraction then keeps the signatures whose types
all resolve.

TypeInfo JSON schema::

    {"classes": [{"qualified_name": str,
                  "fields": [{"name": str, "type": str}, ...],
                  "methods": [<signature>, ...]}, ...],
     "functions": [<signature>, ...]}

    <signature> = {"qualified_name": str,
                   "params": [{"name": str, "type": str}, ...],
                   "return": str}

All ``type`` strings use the type-expression grammar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Set

from .errors import IngestError, TypeSeedError, TypeSyntaxError
from .registry import Registry, TypeExpression, parse_type_expression

DEFAULT_MAX_ITERATIONS = 5


@dataclass(frozen=True)
class FunctionSignature:
    qualified_name: str
    params: tuple[tuple[str, TypeExpression], ...]
    return_type: TypeExpression


@dataclass(frozen=True)
class ClassEntry:
    qualified_name: str
    fields: tuple[tuple[str, TypeExpression], ...]
    methods: tuple[FunctionSignature, ...]


@dataclass(frozen=True)
class TypeInfo:
    classes: tuple[ClassEntry, ...] = ()
    functions: tuple[FunctionSignature, ...] = ()


@dataclass
class RegistrationReport:
    """Outcome of a fixed-point registration run."""

    admitted: list[str] = field(default_factory=list)
    rejected: list[tuple[str, list[str]]] = field(default_factory=list)
    iterations_used: int = 0
    fixed_point_reached: bool = False

    def to_jsonable(self) -> dict:
        return {
            "admitted": list(self.admitted),
            "rejected": [
                {"class": name, "unresolved": missing}
                for name, missing in self.rejected
            ],
            "iterations_used": self.iterations_used,
            "fixed_point_reached": self.fixed_point_reached,
        }


def types_of(f: FunctionSignature) -> Set[TypeExpression]:
    """All types a signature uses: parameter and return types plus every
    nested argument expression."""
    out: Set[TypeExpression] = set()
    for _, ty in f.params:
        out.update(ty.walk())
    out.update(f.return_type.walk())
    return out


def register_types_fixed_point(
    reg: Registry, info: TypeInfo, max_iters: int = DEFAULT_MAX_ITERATIONS
) -> RegistrationReport:
    """Run admission passes over ``info.classes`` until fixed point.

    A class is admitted once all its attribute types and every type in its
    method signatures resolve; admission registers the class as a record,
    which can unblock other classes in the same pass. Mutates ``reg`` and
    returns the report.
    """
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    report = RegistrationReport()
    pending = {c.qualified_name: c for c in info.classes}
    failed: dict[str, str] = {}

    for iteration in range(1, max_iters + 1):
        report.iterations_used = iteration
        admitted_now = []
        for name, entry in list(pending.items()):
            if not _admissible(reg, entry):
                continue
            try:
                reg.register_record(name, entry.fields)
            except TypeSeedError as exc:
                failed[name] = str(exc)
                del pending[name]
                continue
            admitted_now.append(name)
            del pending[name]
        report.admitted.extend(admitted_now)
        if not admitted_now:
            report.fixed_point_reached = True
            break

    for name, entry in pending.items():
        missing = sorted(
            {str(ty) for ty in _required_types(entry) if not reg.is_resolvable(ty)}
        )
        report.rejected.append((name, missing))
    for name, reason in failed.items():
        report.rejected.append((name, [reason]))
    report.rejected.sort(key=lambda item: item[0])
    return report


def _required_types(entry: ClassEntry) -> Iterable[TypeExpression]:
    for _, ty in entry.fields:
        yield ty
    for m in entry.methods:
        yield from types_of(m)


def _admissible(reg: Registry, entry: ClassEntry) -> bool:
    return all(reg.is_resolvable(ty) for ty in _required_types(entry))


def extract_appropriate_functions(
    reg: Registry, info: TypeInfo
) -> Set[FunctionSignature]:
    """The functions whose every signature type resolves in ``reg``."""
    return {
        f
        for f in info.functions
        if all(reg.is_resolvable(ty) for ty in types_of(f))
    }


def load_type_info(path: "str | Path") -> TypeInfo:
    """Read and validate a TypeInfo JSON file."""
    raw = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise IngestError(f"invalid JSON: {exc}", "$") from None
    return parse_type_info(obj)


def parse_type_info(obj: Any) -> TypeInfo:
    """Validate a parsed TypeInfo document; errors carry the field path."""
    if not isinstance(obj, dict):
        raise IngestError("top level must be an object", "$")
    classes = []
    for i, entry in enumerate(_expect_list(obj, "classes")):
        classes.append(_parse_class(entry, f"$.classes[{i}]"))
    functions = []
    for i, entry in enumerate(_expect_list(obj, "functions")):
        functions.append(_parse_signature(entry, f"$.functions[{i}]", owner=None))
    return TypeInfo(tuple(classes), tuple(functions))


def _expect_list(obj: dict, key: str) -> list:
    value = obj.get(key, [])
    if not isinstance(value, list):
        raise IngestError(f"{key!r} must be an array", f"$.{key}")
    return value


def _parse_class(entry: Any, path: str) -> ClassEntry:
    if not isinstance(entry, dict):
        raise IngestError("class entry must be an object", path)
    name = _expect_name(entry, "qualified_name", path)
    fields = []
    raw_fields = entry.get("fields", [])
    if not isinstance(raw_fields, list):
        raise IngestError("'fields' must be an array", f"{path}.fields")
    for i, f in enumerate(raw_fields):
        fpath = f"{path}.fields[{i}]"
        if not isinstance(f, dict):
            raise IngestError("field must be an object", fpath)
        fname = _expect_name(f, "name", fpath)
        fty = _parse_type_text(f.get("type"), f"{fpath}.type", owner=name)
        fields.append((fname, fty))
    methods = []
    raw_methods = entry.get("methods", [])
    if not isinstance(raw_methods, list):
        raise IngestError("'methods' must be an array", f"{path}.methods")
    for i, m in enumerate(raw_methods):
        methods.append(_parse_signature(m, f"{path}.methods[{i}]", owner=name))
    return ClassEntry(name, tuple(fields), tuple(methods))


def _parse_signature(entry: Any, path: str, owner: "str | None") -> FunctionSignature:
    if not isinstance(entry, dict):
        raise IngestError("signature must be an object", path)
    name = _expect_name(entry, "qualified_name", path)
    context = name if owner is None else f"{owner}.{name}" if "." not in name else name
    params = []
    seen = set()
    raw_params = entry.get("params", [])
    if not isinstance(raw_params, list):
        raise IngestError("'params' must be an array", f"{path}.params")
    for i, p in enumerate(raw_params):
        ppath = f"{path}.params[{i}]"
        if not isinstance(p, dict):
            raise IngestError("param must be an object", ppath)
        pname = _expect_name(p, "name", ppath)
        if pname in seen:
            raise IngestError(
                f"duplicate parameter {pname!r} in {context}", ppath
            )
        seen.add(pname)
        pty = _parse_type_text(p.get("type"), f"{ppath}.type", owner=context)
        params.append((pname, pty))
    rty = _parse_type_text(entry.get("return"), f"{path}.return", owner=context)
    return FunctionSignature(name, tuple(params), rty)


def _expect_name(obj: dict, key: str, path: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value.strip():
        raise IngestError(f"{key!r} must be a non-empty string", f"{path}.{key}")
    return value.strip().lower()


def _parse_type_text(value: Any, path: str, owner: "str | None") -> TypeExpression:
    if not isinstance(value, str):
        raise IngestError("type must be a string", path)
    try:
        return parse_type_expression(value)
    except TypeSyntaxError as exc:
        where = f" (declared by {owner})" if owner else ""
        raise IngestError(f"bad type expression{where}: {exc}", path) from None
