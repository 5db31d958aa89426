"""Harness exception types."""


class HarnessError(Exception):
    """Base class for harness errors."""


class UnsupportedAnnotation(HarnessError):
    """An annotation form the extractor cannot translate."""


class MaterializeError(HarnessError):
    """A wire value could not be turned into a runtime object."""
