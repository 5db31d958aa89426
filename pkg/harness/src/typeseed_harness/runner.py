"""Drive target functions with generated inputs under a time budget.

Each target runs in a worker process so a crashing or hanging call cannot
take down the run: on a per-call timeout or a dead worker the call is
recorded as an exception outcome and a fresh worker is spawned. Inputs are
wire-value argument lists; they are materialized inside the worker so only
plain JSON data crosses the process boundary.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional

from .errors import HarnessError, MaterializeError
from .materialize import ClassResolver, materialize

log = logging.getLogger(__name__)

DEFAULT_BUDGET_SECONDS = 440.0
DEFAULT_CALL_TIMEOUT = 1.0

_MESSAGE_LIMIT = 500


@dataclass
class OutcomeRecord:
    """One function invocation: inputs are kept in wire form so the record
    is self-contained and replayable."""

    function: str
    inputs: list
    outcome: str  # "returned" | "exception"
    exception_type: Optional[str] = None
    exception_message: Optional[str] = None
    wall_time: float = 0.0

    def to_jsonable(self) -> dict:
        doc = {
            "function": self.function,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "wall_time": self.wall_time,
        }
        if self.outcome == "exception":
            doc["exception_type"] = self.exception_type
            doc["exception_message"] = self.exception_message
        return doc

    @classmethod
    def from_jsonable(cls, doc: dict) -> "OutcomeRecord":
        return cls(
            function=doc["function"],
            inputs=doc["inputs"],
            outcome=doc["outcome"],
            exception_type=doc.get("exception_type"),
            exception_message=doc.get("exception_message"),
            wall_time=doc.get("wall_time", 0.0),
        )


def _worker_main(conn, root: str, qualified_name: str) -> None:
    resolver = ClassResolver(root)
    try:
        fn = resolver.resolve_function(qualified_name)
    except MaterializeError as exc:
        conn.send(("fatal", type(exc).__name__, str(exc)))
        return
    conn.send(("ready", None, None))
    while True:
        try:
            message = conn.recv()
        except EOFError:
            return
        if message is None:
            return
        wire_args = message
        try:
            args = [materialize(w, resolver) for w in wire_args]
        except MaterializeError as exc:
            conn.send(("skip", type(exc).__name__, str(exc)[:_MESSAGE_LIMIT]))
            continue
        try:
            fn(*args)
        except BaseException as exc:  # the target may raise anything
            conn.send(("exception", type(exc).__name__, str(exc)[:_MESSAGE_LIMIT]))
        else:
            conn.send(("returned", None, None))


class _Worker:
    def __init__(self, root: str, qualified_name: str):
        ctx = multiprocessing.get_context("fork")
        self.conn, child = ctx.Pipe()
        self.process = ctx.Process(
            target=_worker_main, args=(child, root, qualified_name), daemon=True
        )
        self.process.start()
        child.close()
        try:
            kind, exc_type, message = self.conn.recv()
        except EOFError:
            self.kill()
            raise HarnessError(
                f"worker for {qualified_name!r} died during startup"
            ) from None
        if kind == "fatal":
            self.stop()
            raise HarnessError(f"cannot fuzz {qualified_name!r}: {message}")

    def stop(self) -> None:
        try:
            self.conn.send(None)
        except (BrokenPipeError, OSError):
            pass
        self.process.join(timeout=0.5)
        if self.process.is_alive():
            self.process.terminate()
            self.process.join(timeout=1.0)
        self.conn.close()

    def kill(self) -> None:
        self.process.terminate()
        self.process.join(timeout=1.0)
        self.conn.close()


def fuzz_function(
    qualified_name: str,
    inputs: Iterable[list],
    budget_seconds: float = DEFAULT_BUDGET_SECONDS,
    *,
    root: str = ".",
    per_call_timeout: float = DEFAULT_CALL_TIMEOUT,
) -> List[OutcomeRecord]:
    """Call the target once per input until the budget elapses.

    ``inputs`` yields wire-value argument lists. Inputs that fail to
    materialize are skipped (logged, no outcome record). Timeouts and
    worker crashes are recorded as exception outcomes with harness-owned
    exception types.
    """
    if budget_seconds <= 0:
        raise ValueError("budget must be positive")
    # Resolve up front so an unimportable target is a run-level error.
    ClassResolver(root).resolve_function(qualified_name)

    records: List[OutcomeRecord] = []
    worker = _Worker(root, qualified_name)
    deadline = time.monotonic() + budget_seconds
    try:
        for wire_args in inputs:
            if time.monotonic() >= deadline:
                break
            started = time.perf_counter()
            try:
                worker.conn.send(wire_args)
            except (BrokenPipeError, OSError):
                worker.kill()
                worker = _Worker(root, qualified_name)
                worker.conn.send(wire_args)
            if not worker.conn.poll(per_call_timeout):
                worker.kill()
                worker = _Worker(root, qualified_name)
                records.append(
                    OutcomeRecord(
                        function=qualified_name,
                        inputs=list(wire_args),
                        outcome="exception",
                        exception_type="HarnessTimeout",
                        exception_message=(
                            f"call exceeded {per_call_timeout}s"
                        ),
                        wall_time=time.perf_counter() - started,
                    )
                )
                continue
            try:
                kind, exc_type, message = worker.conn.recv()
            except EOFError:
                worker.kill()
                worker = _Worker(root, qualified_name)
                records.append(
                    OutcomeRecord(
                        function=qualified_name,
                        inputs=list(wire_args),
                        outcome="exception",
                        exception_type="WorkerCrash",
                        exception_message="worker process died during the call",
                        wall_time=time.perf_counter() - started,
                    )
                )
                continue
            elapsed = time.perf_counter() - started
            if kind == "skip":
                log.warning(
                    "skipping input for %s: %s", qualified_name, message
                )
                continue
            records.append(
                OutcomeRecord(
                    function=qualified_name,
                    inputs=list(wire_args),
                    outcome="returned" if kind == "returned" else "exception",
                    exception_type=exc_type,
                    exception_message=message,
                    wall_time=elapsed,
                )
            )
    finally:
        worker.stop()
    return records
