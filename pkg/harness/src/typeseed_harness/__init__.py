"""typeseed-harness: the Python side of the generation loop.

Walks annotated source trees and emits TypeInfo JSON for the generator,
materializes generated wire values into runtime objects, drives target
functions under a time budget with per-call process isolation, and replays
recorded inputs under statement-coverage measurement.

The harness talks to the generator only through its published interfaces:
the TypeInfo JSON schema, the value wire format, and the ``typeseed`` CLI.
"""

from .errors import HarnessError, MaterializeError, UnsupportedAnnotation
from .extract import extract_type_info, qualify_name
from .materialize import ClassResolver, materialize, rational_to_binary64
from .replay import function_statement_lines, replay_with_coverage
from .runner import OutcomeRecord, fuzz_function

__version__ = "0.1.0"

__all__ = [
    "ClassResolver",
    "HarnessError",
    "MaterializeError",
    "OutcomeRecord",
    "UnsupportedAnnotation",
    "extract_type_info",
    "function_statement_lines",
    "fuzz_function",
    "materialize",
    "qualify_name",
    "rational_to_binary64",
    "replay_with_coverage",
]
