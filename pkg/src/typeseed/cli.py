"""Command-line driver.

Commands:
    gen          generate wire values for a type expression
    register     run fixed-point registration over a TypeInfo file
    appropriate  list functions whose signature types all resolve
    serve        run the HTTP service

The seed defaults to the TYPESEED_SEED environment variable, then 0; output
is a pure function of the argument vector plus that seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .errors import TypeSeedError
from .generation import generate_examples
from .registry import init_types
from .rng import seed_state
from .typeinfo import (
    DEFAULT_MAX_ITERATIONS,
    extract_appropriate_functions,
    load_type_info,
    register_types_fixed_point,
)
from .wire import encode_value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="typeseed",
        description="Generate seeded example values for Python-style type expressions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate example values")
    gen.add_argument("--type", required=True, dest="type_text", metavar="EXPR",
                     help="type expression, e.g. 'dictionary[str,int]'")
    gen.add_argument("--n", type=int, default=1, help="number of values")
    gen.add_argument("--seed", type=int, default=None, help="generator seed")
    gen.add_argument("--typeinfo", default=None,
                     help="TypeInfo JSON to register before generating")
    gen.add_argument("--format", choices=("json", "jsonl"), default="jsonl",
                     help="array or one value per line (default)")

    reg = sub.add_parser("register", help="register types from a TypeInfo file")
    reg.add_argument("--typeinfo", required=True)
    reg.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERATIONS)

    app = sub.add_parser("appropriate",
                         help="list functions whose signature types all resolve")
    app.add_argument("--typeinfo", required=True)
    app.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERATIONS)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--port", type=int, default=8000)
    srv.add_argument("--seed", type=int, default=None)
    srv.add_argument("--max-examples", type=int, default=10_000)
    return parser


def _resolve_seed(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("TYPESEED_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise TypeSeedError(f"TYPESEED_SEED must be an integer, got {env!r}")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise TypeSeedError(f"--n must be >= 0, got {args.n}")
    reg = init_types()
    if args.typeinfo:
        register_types_fixed_point(reg, load_type_info(args.typeinfo))
    seed = _resolve_seed(args.seed)
    values, _ = generate_examples(reg, args.type_text, args.n, seed_state(seed))
    encoded = [encode_value(v) for v in values]
    if args.format == "jsonl":
        text = "".join(line + "\n" for line in encoded)
    else:
        text = "[" + ",".join(encoded) + "]\n"
    sys.stdout.write(text)
    return 0


def _cmd_register(args: argparse.Namespace) -> int:
    reg = init_types()
    report = register_types_fixed_point(
        reg, load_type_info(args.typeinfo), max_iters=args.max_iters
    )
    sys.stdout.write(json.dumps(report.to_jsonable(), indent=2) + "\n")
    return 0


def _cmd_appropriate(args: argparse.Namespace) -> int:
    reg = init_types()
    info = load_type_info(args.typeinfo)
    register_types_fixed_point(reg, info, max_iters=args.max_iters)
    names = sorted(f.qualified_name for f in extract_appropriate_functions(reg, info))
    sys.stdout.write("".join(name + "\n" for name in names))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import ServiceConfig, run  # deferred: pulls in fastapi

    run(ServiceConfig(
        port=args.port,
        seed=_resolve_seed(args.seed),
        max_examples_per_request=args.max_examples,
    ))
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "register": _cmd_register,
    "appropriate": _cmd_appropriate,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BrokenPipeError:
        # Downstream closed the pipe (e.g. | head); exit quietly.
        try:
            sys.stdout.close()
        except OSError:
            pass
        return 0
    except TypeSeedError as exc:
        print(f"typeseed: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"typeseed: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
