"""Exception types raised by the typeseed core."""


class TypeSeedError(Exception):
    """Base class for all typeseed errors."""


class UnresolvedTypeError(TypeSeedError):
    """A type name or expression does not resolve in the registry."""

    def __init__(self, name: str, message: str | None = None):
        self.name = name
        super().__init__(message or f"unresolved type: {name!r}")


class ArityError(TypeSeedError):
    """A type expression's argument count does not match the head's arity."""


class AliasCycleError(TypeSeedError):
    """Inserting an alias would create a cycle in the alias table."""

    def __init__(self, chain: list[str]):
        self.chain = list(chain)
        pretty = " -> ".join(self.chain)
        super().__init__(f"alias cycle: {pretty}")


class UnsupportedRecursionError(TypeSeedError):
    """A record refers to itself; recursive records are not supported."""


class TypeSyntaxError(TypeSeedError):
    """A type-expression string does not match the grammar."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} (at position {position} in {text!r})")


class IngestError(TypeSeedError):
    """A TypeInfo document violates the schema."""

    def __init__(self, message: str, path: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class WireDecodeError(TypeSeedError):
    """A wire value does not match the value schema."""

    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class InternalError(TypeSeedError):
    """An invariant the library maintains was violated."""
