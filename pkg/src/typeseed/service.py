"""HTTP service exposing registration and example generation.

Endpoints:
    POST /seed      {"seed": int}                      reset the value stream
    POST /unions    {"name": str, "members": [str...], "weights": [int...]?}
    POST /records   {"name": str, "fields": [{"name","type"}...]}
    POST /typeinfo  TypeInfo document                  bulk registration run
    POST /examples  {"type": str, "n": int}            array of wire values
    GET  /types     registered descriptors and aliases

Registration and generation share one lock: mutations are serialized and
the service-owned random state advances atomically, so the transcript of
responses is a pure function of the seed and the ordered request sequence.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .errors import TypeSeedError
from .generation import generate_examples
from .registry import Registry, init_types
from .rng import seed_state
from .typeinfo import parse_type_info, register_types_fixed_point
from .wire import to_jsonable


@dataclass
class ServiceConfig:
    port: int = 8000
    seed: int = 0
    max_examples_per_request: int = 10_000

    def __post_init__(self) -> None:
        if self.max_examples_per_request < 1:
            raise ValueError("max_examples_per_request must be >= 1")


class _ServiceState:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self.registry: Registry = init_types()
        self.rand = seed_state(config.seed)
        self.lock = threading.Lock()


def _error_response(status: int, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"type": type(exc).__name__, "message": str(exc)}},
    )


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig()
    state = _ServiceState(config)
    app = FastAPI(title="typeseed", version="0.1.0")

    @app.exception_handler(TypeSeedError)
    async def _typeseed_error(_request: Request, exc: TypeSeedError):
        return _error_response(400, exc)

    @app.exception_handler(ValueError)
    async def _value_error(_request: Request, exc: ValueError):
        return _error_response(400, exc)

    @app.post("/seed")
    async def set_seed(body: dict) -> dict:
        seed = _expect_int(body, "seed")
        with state.lock:
            state.rand = seed_state(seed)
        return {"ok": True}

    @app.post("/unions")
    async def register_union(body: dict) -> dict:
        name = _expect_str(body, "name")
        members = body.get("members")
        if not isinstance(members, list) or not all(isinstance(m, str) for m in members):
            raise ValueError("'members' must be an array of type strings")
        weights = body.get("weights")
        if weights is not None and (
            not isinstance(weights, list)
            or not all(isinstance(w, int) and not isinstance(w, bool) for w in weights)
        ):
            raise ValueError("'weights' must be an array of integers")
        with state.lock:
            state.registry.register_union(name, members, weights)
        return {"ok": True, "name": name.lower()}

    @app.post("/records")
    async def register_record(body: dict) -> dict:
        name = _expect_str(body, "name")
        raw_fields = body.get("fields")
        if not isinstance(raw_fields, list):
            raise ValueError("'fields' must be an array")
        fields = []
        for f in raw_fields:
            if not isinstance(f, dict):
                raise ValueError("each field must be an object")
            fields.append((_expect_str(f, "name"), _expect_str(f, "type")))
        with state.lock:
            state.registry.register_record(name, fields)
        return {"ok": True, "name": name.lower()}

    @app.post("/typeinfo")
    async def register_typeinfo(body: dict) -> dict:
        info = parse_type_info(body)
        with state.lock:
            report = register_types_fixed_point(state.registry, info)
        return report.to_jsonable()

    @app.post("/examples")
    async def examples(body: dict) -> list:
        type_text = _expect_str(body, "type")
        n = _expect_int(body, "n")
        if n < 0:
            raise ValueError("'n' must be >= 0")
        if n > config.max_examples_per_request:
            raise ValueError(
                f"'n' exceeds the per-request limit of "
                f"{config.max_examples_per_request}"
            )
        with state.lock:
            values, state.rand = generate_examples(
                state.registry, type_text, n, state.rand
            )
        return [to_jsonable(v) for v in values]

    @app.get("/types")
    async def list_types() -> dict:
        with state.lock:
            descriptors = state.registry.descriptors()
            aliases = state.registry.aliases()
        return {
            "types": [
                {
                    "name": d.name,
                    "kind": d.kind.value,
                    "arity": d.arity,
                    "members": [str(m) for m in d.members],
                    "fields": [
                        {"name": fname, "type": str(fty)} for fname, fty in d.fields
                    ],
                }
                for d in descriptors
            ],
            "aliases": {k: aliases[k] for k in sorted(aliases)},
        }

    return app


def _expect_int(body: Any, key: str) -> int:
    value = body.get(key) if isinstance(body, dict) else None
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValueError(f"{key!r} must be an integer")
    return value


def _expect_str(body: Any, key: str) -> str:
    value = body.get(key) if isinstance(body, dict) else None
    if not isinstance(value, str) or not value.strip():
        raise ValueError(f"{key!r} must be a non-empty string")
    return value


def run(config: ServiceConfig) -> None:
    """Serve until interrupted."""
    import uvicorn

    uvicorn.run(create_app(config), host="127.0.0.1", port=config.port)
