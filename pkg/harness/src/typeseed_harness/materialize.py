"""Turn wire values into runtime Python objects.

Exact rationals round to the nearest binary64 (round-half-even, the
rounding ``int.__truediv__`` performs); overflow becomes a signed infinity.
Records are rebuilt by calling the class's constructor with field values in
declared order.
"""

from __future__ import annotations

import importlib.util
import inspect
import math
import sys
from pathlib import Path
from typing import Any

from .errors import MaterializeError


def module_file(root: Path, module_qn: str) -> Path:
    """The source file for a dotted module name under ``root``."""
    parts = module_qn.split(".")
    for candidate in (
        root.joinpath(*parts).with_suffix(".py"),
        root.joinpath(*parts, "__init__.py"),
    ):
        if candidate.is_file():
            return candidate
    raise MaterializeError(f"no source file for module {module_qn!r} under {root}")

_SPECIALS = {
    "nan": math.nan,
    "inf": math.inf,
    "-inf": -math.inf,
    "-0": -0.0,
}


def rational_to_binary64(num: int, den: int) -> float:
    """Nearest binary64 to num/den; overflow saturates to signed infinity."""
    if den <= 0:
        raise MaterializeError(f"denominator must be positive, got {den}")
    try:
        return num / den
    except OverflowError:
        return math.inf if num > 0 else -math.inf


class ClassResolver:
    """Find classes and functions by their lowercase qualified names.

    ``root`` is prepended to sys.path so module paths inside the analyzed
    tree import directly.
    """

    def __init__(self, root: "str | Path"):
        self.root = Path(root).resolve()
        self._modules: dict = {}

    def _module(self, module_qn: str):
        mod = self._modules.get(module_qn)
        if mod is not None:
            return mod
        # Load from the file under this root rather than trusting the
        # import cache: a same-named module from another root must not
        # shadow this one.
        path = module_file(self.root, module_qn)
        cached = sys.modules.get(module_qn)
        if cached is not None and getattr(cached, "__file__", None) == str(path):
            mod = cached
        else:
            if str(self.root) not in sys.path:
                sys.path.insert(0, str(self.root))
            spec = importlib.util.spec_from_file_location(module_qn, path)
            if spec is None or spec.loader is None:
                raise MaterializeError(f"cannot load module {module_qn!r} from {path}")
            mod = importlib.util.module_from_spec(spec)
            sys.modules[module_qn] = mod
            try:
                spec.loader.exec_module(mod)
            except Exception as exc:
                sys.modules.pop(module_qn, None)
                raise MaterializeError(
                    f"cannot import module {module_qn!r}: {exc}"
                ) from None
        self._modules[module_qn] = mod
        return mod

    def _lookup(self, qualified_name: str, predicate, kind: str):
        module_qn, _, local = qualified_name.rpartition(".")
        if not module_qn:
            raise MaterializeError(
                f"{kind} name {qualified_name!r} is not module-qualified"
            )
        mod = self._module(module_qn)
        obj = getattr(mod, local, None)
        if obj is not None and predicate(obj):
            return obj
        for name in dir(mod):
            if name.lower() == local:
                candidate = getattr(mod, name)
                if predicate(candidate):
                    return candidate
        raise MaterializeError(f"no {kind} {qualified_name!r} found")

    def resolve_class(self, qualified_name: str):
        return self._lookup(qualified_name, inspect.isclass, "class")

    def resolve_function(self, qualified_name: str):
        return self._lookup(qualified_name, callable, "function")


def materialize(wire: Any, resolver: "ClassResolver | None" = None) -> Any:
    """Build the runtime object a wire value describes."""
    if not isinstance(wire, dict):
        raise MaterializeError(f"wire value must be an object, got {type(wire).__name__}")
    tag = wire.get("t")
    if tag == "int":
        return _int_text(wire.get("v"))
    if tag == "float":
        if "special" in wire:
            value = _SPECIALS.get(wire["special"])
            if value is None:
                raise MaterializeError(f"unknown float special {wire['special']!r}")
            return value
        return rational_to_binary64(
            _int_text(wire.get("num")), _int_text(wire.get("den"))
        )
    if tag == "str":
        v = wire.get("v")
        if not isinstance(v, str):
            raise MaterializeError("str value must be a string")
        return v
    if tag == "bytes":
        v = wire.get("v")
        if not isinstance(v, list):
            raise MaterializeError("bytes value must be an array")
        try:
            return bytes(v)
        except (TypeError, ValueError) as exc:
            raise MaterializeError(f"bad byte array: {exc}") from None
    if tag == "bool":
        v = wire.get("v")
        if not isinstance(v, bool):
            raise MaterializeError("bool value must be true or false")
        return v
    if tag == "none":
        return None
    if tag == "list":
        return [materialize(x, resolver) for x in _array(wire)]
    if tag == "tuple":
        return tuple(materialize(x, resolver) for x in _array(wire))
    if tag == "map":
        out = {}
        for pair in _array(wire):
            if not isinstance(pair, list) or len(pair) != 2:
                raise MaterializeError("map entry must be a [key, value] pair")
            key = materialize(pair[0], resolver)
            value = materialize(pair[1], resolver)
            try:
                out[key] = value
            except TypeError as exc:
                raise MaterializeError(f"unhashable map key: {exc}") from None
        return out
    if tag == "record":
        if resolver is None:
            raise MaterializeError("record value needs a class resolver")
        class_name = wire.get("class")
        if not isinstance(class_name, str):
            raise MaterializeError("record class must be a string")
        fields = wire.get("fields")
        if not isinstance(fields, dict):
            raise MaterializeError("record fields must be an object")
        cls = resolver.resolve_class(class_name)
        values = [materialize(v, resolver) for v in fields.values()]
        try:
            return cls(*values)
        except Exception as exc:
            raise MaterializeError(
                f"constructor of {class_name!r} failed: {exc}"
            ) from None
    raise MaterializeError(f"unknown wire tag {tag!r}")


def _int_text(v: Any) -> int:
    if isinstance(v, str):
        text = v.strip()
        if text and (text.lstrip("-").isdigit()):
            return int(text)
    raise MaterializeError(f"expected a decimal string, got {v!r}")


def _array(wire: dict) -> list:
    v = wire.get("v")
    if not isinstance(v, list):
        raise MaterializeError("value must be an array")
    return v
