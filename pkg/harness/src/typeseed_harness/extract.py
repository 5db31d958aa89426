"""Extract TypeInfo JSON from an annotated source tree.

Classes contribute their attribute types through the constructor-parameter
idiom (``def __init__(self, a: float): self.a = a``); a class is extracted
only when every constructor parameter is annotated and stored on self, so
that instances can later be rebuilt by calling the constructor with field
values in declared order. Classes without a constructor fall back to
class-body annotations. Module-level functions are extracted when every
parameter and the return type are annotated; methods are recorded under
their class, never as functions; nested functions and nested classes are
ignored.

Annotations are normalized to the generator's type-expression grammar
(List[int] -> list[int], Tuple -> fixedtuple, Dict -> dictionary,
Optional[T] / X | Y -> union[...] with members sorted). Unknown names pass
through lowercased so the generator can reject them with diagnostics;
annotation forms that cannot be rendered in the grammar put the declaring
item in the skip report instead.

Names referring to classes defined in the same module are qualified with
the module path; cross-module import resolution is out of scope.
"""

from __future__ import annotations

import ast
import json
from pathlib import Path

from .errors import HarnessError, UnsupportedAnnotation

_BUILTIN_HEADS = {
    "int": "int",
    "float": "float",
    "str": "str",
    "bool": "bool",
    "bytes": "bytes",
    "list": "list",
    "tuple": "fixedtuple",
    "dict": "dictionary",
    "List": "list",
    "Tuple": "fixedtuple",
    "Dict": "dictionary",
    "None": "nonetype",
}

_UNION_HEADS = {"Union", "typing.Union"}
_OPTIONAL_HEADS = {"Optional", "typing.Optional"}


def qualify_name(module_prefix: str, local_name: str) -> str:
    """Lowercase dotted qualification: ('classtest', 'TestClassA') ->
    'classtest.testclassa'."""
    if not module_prefix or not local_name:
        raise HarnessError("module prefix and local name must be non-empty")
    return f"{module_prefix}.{local_name}".lower()


def _module_name(root: Path, path: Path) -> str:
    rel = path.relative_to(root).with_suffix("")
    parts = list(rel.parts)
    if parts[-1] == "__init__":
        parts = parts[:-1]
    if not parts:
        raise HarnessError(f"cannot derive a module name for {path}")
    return ".".join(parts).lower()


class _AnnotationConverter:
    def __init__(self, module_qn: str, local_classes: set):
        self.module_qn = module_qn
        self.local_classes = local_classes

    def convert(self, node: ast.AST) -> str:
        if isinstance(node, ast.Name):
            return self._name(node.id)
        if isinstance(node, ast.Constant):
            if node.value is None:
                return "nonetype"
            if node.value is Ellipsis:
                return "..."
            if isinstance(node.value, str):
                return self._string_annotation(node.value)
            raise UnsupportedAnnotation(f"constant annotation {node.value!r}")
        if isinstance(node, ast.Attribute):
            return self._attribute(node)
        if isinstance(node, ast.Subscript):
            return self._subscript(node)
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.BitOr):
            return self._union([node.left, node.right])
        if isinstance(node, ast.List):
            # Callable's argument list; no grammar rendering exists.
            return "..."
        raise UnsupportedAnnotation(f"annotation node {type(node).__name__}")

    def _name(self, ident: str) -> str:
        if ident in _BUILTIN_HEADS:
            return _BUILTIN_HEADS[ident]
        if ident in _UNION_HEADS or ident in _OPTIONAL_HEADS:
            raise UnsupportedAnnotation(f"bare {ident} without arguments")
        if ident in self.local_classes:
            return qualify_name(self.module_qn, ident)
        return ident.lower()

    def _string_annotation(self, text: str) -> str:
        try:
            parsed = ast.parse(text, mode="eval")
        except SyntaxError:
            raise UnsupportedAnnotation(f"unparsable string annotation {text!r}")
        return self.convert(parsed.body)

    def _attribute(self, node: ast.Attribute) -> str:
        parts = []
        cursor: ast.AST = node
        while isinstance(cursor, ast.Attribute):
            parts.append(cursor.attr)
            cursor = cursor.value
        if not isinstance(cursor, ast.Name):
            raise UnsupportedAnnotation("attribute annotation with non-name base")
        parts.append(cursor.id)
        parts.reverse()
        dotted = ".".join(parts)
        if cursor.id == "typing" and len(parts) == 2:
            return self._name(parts[1])
        return dotted.lower()

    def _subscript(self, node: ast.Subscript) -> str:
        head = node.value
        head_dotted = None
        if isinstance(head, ast.Name):
            head_dotted = head.id
        elif isinstance(head, ast.Attribute):
            inner = head
            parts = []
            while isinstance(inner, ast.Attribute):
                parts.append(inner.attr)
                inner = inner.value
            if isinstance(inner, ast.Name):
                parts.append(inner.id)
                head_dotted = ".".join(reversed(parts))
        if head_dotted is None:
            raise UnsupportedAnnotation("subscript with complex head")

        args = (
            list(node.slice.elts)
            if isinstance(node.slice, ast.Tuple)
            else [node.slice]
        )
        if head_dotted in _OPTIONAL_HEADS:
            if len(args) != 1:
                raise UnsupportedAnnotation("Optional takes one argument")
            return self._render_union([self.convert(args[0]), "nonetype"])
        if head_dotted in _UNION_HEADS:
            return self._union(args)
        head_text = (
            self._name(head_dotted)
            if isinstance(head, ast.Name)
            else self._attribute(head)
        )
        return f"{head_text}[{','.join(self.convert(a) for a in args)}]"

    def _union(self, nodes: list) -> str:
        members = []
        for node in nodes:
            if isinstance(node, ast.BinOp) and isinstance(node.op, ast.BitOr):
                members.extend(self._split_union_text(self._union([node.left, node.right])))
            else:
                members.extend(self._split_union_text(self.convert(node)))
        return self._render_union(members)

    @staticmethod
    def _split_union_text(text: str) -> list:
        # Flatten an already-rendered union so nested unions merge.
        if text.startswith("union[") and text.endswith("]"):
            inner = text[len("union["):-1]
            members, depth, current = [], 0, []
            for ch in inner:
                if ch == "," and depth == 0:
                    members.append("".join(current))
                    current = []
                    continue
                if ch == "[":
                    depth += 1
                elif ch == "]":
                    depth -= 1
                current.append(ch)
            members.append("".join(current))
            return members
        return [text]

    @staticmethod
    def _render_union(members: list) -> str:
        unique = sorted(set(members))
        if len(unique) == 1:
            return unique[0]
        return f"union[{','.join(unique)}]"


def _is_fully_annotated(fn: ast.FunctionDef, *, skip_first: bool) -> bool:
    a = fn.args
    if a.vararg or a.kwarg or a.kwonlyargs:
        return False
    params = list(a.posonlyargs) + list(a.args)
    if skip_first and params:
        params = params[1:]
    return all(p.annotation is not None for p in params) and fn.returns is not None


def _positional_params(fn: ast.FunctionDef, *, skip_first: bool) -> list:
    params = list(fn.args.posonlyargs) + list(fn.args.args)
    return params[1:] if skip_first and params else params


def _self_assigned_names(init: ast.FunctionDef) -> set:
    names = set()
    for stmt in ast.walk(init):
        targets = []
        if isinstance(stmt, ast.Assign):
            targets = stmt.targets
        elif isinstance(stmt, ast.AnnAssign) and stmt.target is not None:
            targets = [stmt.target]
        for target in targets:
            if (
                isinstance(target, ast.Attribute)
                and isinstance(target.value, ast.Name)
                and target.value.id == "self"
            ):
                names.add(target.attr)
    return names


class _Skips:
    def __init__(self):
        self.classes = []
        self.functions = []
        self.methods = []
        self.parse_errors = []

    def to_jsonable(self) -> dict:
        key = lambda e: e["qualified_name"]
        return {
            "classes": sorted(self.classes, key=key),
            "functions": sorted(self.functions, key=key),
            "methods": sorted(self.methods, key=key),
            "parse_errors": sorted(self.parse_errors, key=lambda e: e["path"]),
        }


def _signature_entry(fn, qualified, conv, *, skip_first) -> dict:
    params = []
    for p in _positional_params(fn, skip_first=skip_first):
        params.append({"name": p.arg.lower(), "type": conv.convert(p.annotation)})
    return {
        "qualified_name": qualified,
        "params": params,
        "return": conv.convert(fn.returns),
    }


def _extract_class(node: ast.ClassDef, module_qn, conv, skips) -> "dict | None":
    class_qn = qualify_name(module_qn, node.name)
    init = next(
        (
            item
            for item in node.body
            if isinstance(item, ast.FunctionDef) and item.name == "__init__"
        ),
        None,
    )
    fields = []
    if init is not None:
        params = _positional_params(init, skip_first=True)
        if init.args.vararg or init.args.kwarg or init.args.kwonlyargs:
            skips.classes.append(
                {"qualified_name": class_qn,
                 "reason": "constructor uses *args/**kwargs/keyword-only parameters"}
            )
            return None
        stored = _self_assigned_names(init)
        for p in params:
            if p.annotation is None:
                skips.classes.append(
                    {"qualified_name": class_qn,
                     "reason": f"constructor parameter {p.arg!r} is unannotated"}
                )
                return None
            if p.arg not in stored:
                skips.classes.append(
                    {"qualified_name": class_qn,
                     "reason": f"constructor parameter {p.arg!r} is not stored on self"}
                )
                return None
            try:
                fields.append({"name": p.arg.lower(), "type": conv.convert(p.annotation)})
            except UnsupportedAnnotation as exc:
                skips.classes.append(
                    {"qualified_name": class_qn, "reason": str(exc)}
                )
                return None
    else:
        for item in node.body:
            if isinstance(item, ast.AnnAssign) and isinstance(item.target, ast.Name):
                try:
                    fields.append(
                        {"name": item.target.id.lower(),
                         "type": conv.convert(item.annotation)}
                    )
                except UnsupportedAnnotation as exc:
                    skips.classes.append(
                        {"qualified_name": class_qn, "reason": str(exc)}
                    )
                    return None

    methods = []
    for item in node.body:
        if isinstance(item, ast.AsyncFunctionDef):
            skips.methods.append(
                {"qualified_name": f"{class_qn}.{item.name.lower()}",
                 "reason": "async methods are not extracted"}
            )
            continue
        if not isinstance(item, ast.FunctionDef):
            continue
        method_qn = f"{class_qn}.{item.name.lower()}"
        if not _is_fully_annotated(item, skip_first=True):
            skips.methods.append(
                {"qualified_name": method_qn, "reason": "not fully annotated"}
            )
            continue
        try:
            methods.append(_signature_entry(item, method_qn, conv, skip_first=True))
        except UnsupportedAnnotation as exc:
            skips.methods.append({"qualified_name": method_qn, "reason": str(exc)})
    methods.sort(key=lambda m: m["qualified_name"])
    return {"qualified_name": class_qn, "fields": fields, "methods": methods}


def extract_type_info(source_root: "str | Path") -> "tuple[dict, dict]":
    """Walk ``source_root`` and return (typeinfo, skip_report) documents.

    Output is deterministic: modules are visited in sorted path order and
    classes/functions are sorted by qualified name.
    """
    root = Path(source_root)
    if not root.is_dir():
        raise HarnessError(f"not a directory: {root}")
    classes = []
    functions = []
    skips = _Skips()

    for path in sorted(root.rglob("*.py")):
        try:
            tree = ast.parse(path.read_text(encoding="utf-8"))
        except (SyntaxError, UnicodeDecodeError) as exc:
            skips.parse_errors.append(
                {"path": str(path.relative_to(root)), "reason": str(exc)}
            )
            continue
        module_qn = _module_name(root, path)
        local_classes = {
            item.name for item in tree.body if isinstance(item, ast.ClassDef)
        }
        conv = _AnnotationConverter(module_qn, local_classes)

        for node in tree.body:
            if isinstance(node, ast.ClassDef):
                entry = _extract_class(node, module_qn, conv, skips)
                if entry is not None:
                    classes.append(entry)
            elif isinstance(node, ast.AsyncFunctionDef):
                skips.functions.append(
                    {"qualified_name": qualify_name(module_qn, node.name),
                     "reason": "async functions are not extracted"}
                )
            elif isinstance(node, ast.FunctionDef):
                fn_qn = qualify_name(module_qn, node.name)
                if not _is_fully_annotated(node, skip_first=False):
                    skips.functions.append(
                        {"qualified_name": fn_qn, "reason": "not fully annotated"}
                    )
                    continue
                try:
                    functions.append(
                        _signature_entry(node, fn_qn, conv, skip_first=False)
                    )
                except UnsupportedAnnotation as exc:
                    skips.functions.append(
                        {"qualified_name": fn_qn, "reason": str(exc)}
                    )

    classes.sort(key=lambda c: c["qualified_name"])
    functions.sort(key=lambda f: f["qualified_name"])
    return {"classes": classes, "functions": functions}, skips.to_jsonable()


def write_type_info(source_root, out_path, skip_report_path=None) -> None:
    """Extract and write typeinfo (and optionally the skip report) as
    stable, byte-reproducible JSON."""
    typeinfo, skips = extract_type_info(source_root)
    Path(out_path).write_text(
        json.dumps(typeinfo, indent=2) + "\n", encoding="utf-8"
    )
    if skip_report_path:
        Path(skip_report_path).write_text(
            json.dumps(skips, indent=2) + "\n", encoding="utf-8"
        )
