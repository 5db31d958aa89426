"""typeseed: seeded, type-directed example-value generation.

A registry of simple and compound types, weighted enumerators that produce
edge-case-heavy example values, and a registration pipeline that decides
which user-defined classes and functions are fully representable. Values
are exact (big integers, rationals, tagged float specials) and travel over
a canonical JSON wire format.
"""

from .errors import (
    AliasCycleError,
    ArityError,
    IngestError,
    InternalError,
    TypeSeedError,
    TypeSyntaxError,
    UnresolvedTypeError,
    UnsupportedRecursionError,
    WireDecodeError,
)
from .generation import generate_examples, generate_value, is_member
from .registry import (
    Registry,
    TypeDescriptor,
    TypeExpression,
    TypeKind,
    init_types,
    parse_type_expression,
)
from .rng import (
    RandomState,
    next_uniform,
    random_bool,
    seed_state,
    signed_power_of_two,
    weighted_switch,
)
from .typeinfo import (
    ClassEntry,
    FunctionSignature,
    RegistrationReport,
    TypeInfo,
    extract_appropriate_functions,
    load_type_info,
    parse_type_info,
    register_types_fixed_point,
    types_of,
)
from .values import FloatSpecial, GeneratedValue, MapValue, RecordValue
from .wire import decode_value, encode_value, from_jsonable, to_jsonable

__version__ = "0.1.0"

__all__ = [
    "AliasCycleError",
    "ArityError",
    "ClassEntry",
    "FloatSpecial",
    "FunctionSignature",
    "GeneratedValue",
    "IngestError",
    "InternalError",
    "MapValue",
    "RandomState",
    "RecordValue",
    "Registry",
    "RegistrationReport",
    "TypeDescriptor",
    "TypeExpression",
    "TypeInfo",
    "TypeKind",
    "TypeSeedError",
    "TypeSyntaxError",
    "UnresolvedTypeError",
    "UnsupportedRecursionError",
    "WireDecodeError",
    "decode_value",
    "encode_value",
    "extract_appropriate_functions",
    "from_jsonable",
    "generate_examples",
    "generate_value",
    "init_types",
    "is_member",
    "load_type_info",
    "next_uniform",
    "parse_type_expression",
    "parse_type_info",
    "random_bool",
    "register_types_fixed_point",
    "seed_state",
    "signed_power_of_two",
    "to_jsonable",
    "types_of",
    "weighted_switch",
]
