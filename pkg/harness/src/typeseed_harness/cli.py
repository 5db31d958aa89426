"""Harness command line.

Commands:
    extract     walk a source tree, write TypeInfo JSON (+ skip report)
    makeinputs  ask the generator CLI for per-function argument streams
    fuzz        drive functions with recorded inputs under a budget
    replay      re-execute records and write a statement-coverage report

``makeinputs`` shells out to the generator (default: `python -m typeseed`),
composing its `appropriate` and `gen` commands; argument tuples for a
function with parameters (a: int, b: float) come from the expression
fixedtuple[int,float].
"""

from __future__ import annotations

import argparse
import json
import shlex
import subprocess
import sys
import zlib
from collections import defaultdict
from pathlib import Path
from typing import List, Optional, Sequence

from .errors import HarnessError
from .extract import write_type_info
from .replay import replay_with_coverage
from .runner import DEFAULT_BUDGET_SECONDS, DEFAULT_CALL_TIMEOUT, OutcomeRecord, fuzz_function


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="typeseed-harness",
        description="Extract signatures, fuzz them with generated values, replay under coverage.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ext = sub.add_parser("extract", help="emit TypeInfo JSON for a source tree")
    ext.add_argument("--root", required=True)
    ext.add_argument("--out", required=True)
    ext.add_argument("--skip-report", default=None)

    mk = sub.add_parser("makeinputs", help="generate argument streams per function")
    mk.add_argument("--typeinfo", required=True)
    mk.add_argument("--per-function", type=int, default=100)
    mk.add_argument("--seed", type=int, default=0)
    mk.add_argument("--out", required=True)
    mk.add_argument("--gen-cmd", default=None,
                    help="generator CLI (default: current python -m typeseed)")

    fz = sub.add_parser("fuzz", help="run recorded inputs against their targets")
    fz.add_argument("--typeinfo", required=True)
    fz.add_argument("--root", required=True)
    fz.add_argument("--inputs", required=True)
    fz.add_argument("--budget", type=float, default=DEFAULT_BUDGET_SECONDS,
                    help="seconds per function (default 440)")
    fz.add_argument("--per-call-timeout", type=float, default=DEFAULT_CALL_TIMEOUT)
    fz.add_argument("--out", required=True)

    rp = sub.add_parser("replay", help="replay records and measure coverage")
    rp.add_argument("--records", required=True)
    rp.add_argument("--root", required=True)
    rp.add_argument("--typeinfo", default=None,
                    help="coverage targets = this file's functions (default: "
                         "functions appearing in the records)")
    rp.add_argument("--coverage-out", required=True)
    return parser


def _gen_command(arg: Optional[str]) -> List[str]:
    if arg:
        return shlex.split(arg)
    return [sys.executable, "-m", "typeseed"]


def _run_generator(cmd: List[str]) -> str:
    result = subprocess.run(cmd, capture_output=True, text=True)
    if result.returncode != 0:
        raise HarnessError(
            f"generator command failed ({' '.join(cmd[:3])}...): "
            f"{result.stderr.strip()}"
        )
    return result.stdout


def _cmd_extract(args: argparse.Namespace) -> int:
    write_type_info(args.root, args.out, args.skip_report)
    return 0


def _cmd_makeinputs(args: argparse.Namespace) -> int:
    gen_cmd = _gen_command(args.gen_cmd)
    typeinfo = json.loads(Path(args.typeinfo).read_text(encoding="utf-8"))
    by_name = {f["qualified_name"]: f for f in typeinfo.get("functions", [])}

    listing = _run_generator(
        gen_cmd + ["appropriate", "--typeinfo", args.typeinfo]
    )
    appropriate = [name for name in listing.splitlines() if name]

    lines = []
    for name in appropriate:
        entry = by_name.get(name)
        if entry is None:
            raise HarnessError(f"{name!r} not present in {args.typeinfo}")
        # Stable per-function seed so adding functions does not reshuffle
        # another function's stream.
        seed = (args.seed + zlib.crc32(name.encode("utf-8"))) & (2**63 - 1)
        param_types = [p["type"] for p in entry["params"]]
        if not param_types:
            lines.extend(
                json.dumps({"function": name, "args": []}) + "\n"
                for _ in range(args.per_function)
            )
            continue
        expr = f"fixedtuple[{','.join(param_types)}]"
        out = _run_generator(
            gen_cmd
            + [
                "gen",
                "--type", expr,
                "--n", str(args.per_function),
                "--seed", str(seed),
                "--typeinfo", args.typeinfo,
            ]
        )
        for line in out.splitlines():
            tup = json.loads(line)
            if tup.get("t") != "tuple":
                raise HarnessError(f"expected a tuple wire value for {name}")
            lines.append(
                json.dumps({"function": name, "args": tup["v"]}) + "\n"
            )
    Path(args.out).write_text("".join(lines), encoding="utf-8")
    return 0


def _cmd_fuzz(args: argparse.Namespace) -> int:
    streams = defaultdict(list)
    with open(args.inputs, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            if "function" not in doc or "args" not in doc:
                raise HarnessError(
                    f"{args.inputs}:{lineno}: expected "
                    '{"function": ..., "args": [...]}'
                )
            streams[doc["function"]].append(doc["args"])

    with open(args.out, "w", encoding="utf-8") as out:
        for name in sorted(streams):
            records = fuzz_function(
                name,
                streams[name],
                budget_seconds=args.budget,
                root=args.root,
                per_call_timeout=args.per_call_timeout,
            )
            for record in records:
                out.write(json.dumps(record.to_jsonable()) + "\n")
            exceptions = sum(r.outcome == "exception" for r in records)
            print(
                f"{name}: {len(records)} calls, {exceptions} exceptions",
                file=sys.stderr,
            )
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    records = []
    with open(args.records, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                records.append(OutcomeRecord.from_jsonable(json.loads(line)))
    if args.typeinfo:
        typeinfo = json.loads(Path(args.typeinfo).read_text(encoding="utf-8"))
        targets = [f["qualified_name"] for f in typeinfo.get("functions", [])]
    else:
        targets = sorted({r.function for r in records})
    report = replay_with_coverage(records, targets, args.root)
    Path(args.coverage_out).write_text(
        json.dumps(report, indent=2) + "\n", encoding="utf-8"
    )
    aggregate = report["aggregate"]
    print(
        f"aggregate coverage: {aggregate['covered_statements']}/"
        f"{aggregate['total_statements']} "
        f"({aggregate['coverage']:.1%})",
        file=sys.stderr,
    )
    return 0


_COMMANDS = {
    "extract": _cmd_extract,
    "makeinputs": _cmd_makeinputs,
    "fuzz": _cmd_fuzz,
    "replay": _cmd_replay,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except HarnessError as exc:
        print(f"typeseed-harness: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"typeseed-harness: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
