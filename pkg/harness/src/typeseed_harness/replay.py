"""Replay recorded inputs under statement-coverage measurement.

Coverage is the fraction of executed statements over the union of the
target functions' bodies. Statement sets come from the syntax tree: every
statement node inside a function body, excluding docstring/constant
expressions (which produce no trace events) and the bodies of nested
function or class definitions (the enclosing def statement itself counts).
Execution is observed with a trace hook restricted to the target files.

Records whose outcome was a harness timeout are not replayed; rerunning a
nonterminating call would hang the replay.
"""

from __future__ import annotations

import ast
import sys
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Set, Tuple

from .errors import HarnessError, MaterializeError
from .materialize import ClassResolver, materialize, module_file
from .runner import OutcomeRecord


def _body_statement_lines(fn: ast.FunctionDef) -> Set[int]:
    lines: Set[int] = set()

    def visit(body: Iterable[ast.stmt]) -> None:
        for stmt in body:
            if isinstance(stmt, ast.Expr) and isinstance(stmt.value, ast.Constant):
                continue  # docstrings and bare constants never trace
            lines.add(stmt.lineno)
            if isinstance(
                stmt, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)
            ):
                continue  # nested bodies are not part of this function
            for field_body in ("body", "orelse", "finalbody"):
                visit(getattr(stmt, field_body, []) or [])
            for handler in getattr(stmt, "handlers", []) or []:
                lines.add(handler.lineno)
                visit(handler.body)
            for case in getattr(stmt, "cases", []) or []:
                visit(case.body)

    visit(fn.body)
    return lines


def function_statement_lines(
    root: "str | Path", qualified_name: str
) -> Tuple[str, Set[int]]:
    """(source file, statement line set) for a top-level function."""
    root = Path(root).resolve()
    module_qn, _, local = qualified_name.rpartition(".")
    if not module_qn:
        raise HarnessError(f"{qualified_name!r} is not module-qualified")
    path = module_file(root, module_qn)
    tree = ast.parse(path.read_text(encoding="utf-8"))
    for node in tree.body:
        if isinstance(node, ast.FunctionDef) and node.name.lower() == local:
            return str(path), _body_statement_lines(node)
    raise HarnessError(f"no top-level function {qualified_name!r} in {path}")


def replay_with_coverage(
    records: List[OutcomeRecord],
    targets: Iterable[str],
    root: "str | Path",
) -> dict:
    """Re-execute recorded calls and report statement coverage per target.

    The metric counts only lines inside the target functions' bodies; calls
    are replayed in record order with exceptions swallowed.
    """
    root = Path(root).resolve()
    targets = sorted(set(targets))
    statements: Dict[str, Tuple[str, Set[int]]] = {
        name: function_statement_lines(root, name) for name in targets
    }
    target_files = {path for path, _ in statements.values()}
    resolver = ClassResolver(root)

    executed: Dict[str, Set[int]] = defaultdict(set)

    def local_tracer(frame, event, arg):
        if event == "line":
            executed[frame.f_code.co_filename].add(frame.f_lineno)
        return local_tracer

    def global_tracer(frame, event, arg):
        if frame.f_code.co_filename in target_files:
            return local_tracer
        return None

    calls: List[Tuple[object, list]] = []
    for record in records:
        if record.exception_type in ("HarnessTimeout", "WorkerCrash"):
            continue
        try:
            fn = resolver.resolve_function(record.function)
            args = [materialize(w, resolver) for w in record.inputs]
        except MaterializeError:
            continue
        calls.append((fn, args))

    sys.settrace(global_tracer)
    try:
        for fn, args in calls:
            try:
                fn(*args)
            except BaseException:
                pass
    finally:
        sys.settrace(None)

    report: dict = {"functions": {}}
    total = covered = 0
    for name in targets:
        path, lines = statements[name]
        hit = len(lines & executed[path])
        total += len(lines)
        covered += hit
        report["functions"][name] = {
            "covered_statements": hit,
            "total_statements": len(lines),
            "coverage": hit / len(lines) if lines else 0.0,
        }
    report["aggregate"] = {
        "covered_statements": covered,
        "total_statements": total,
        "coverage": covered / total if total else 0.0,
    }
    return report
