"""Exception types shared by the relalg package."""
from __future__ import annotations


class RelalgError(Exception):
    """Base class for every failure raised on purpose by relalg."""


class InputError(RelalgError, ValueError):
    """Malformed user input: words, relations, files or flags."""


class ExpressionError(InputError):
    """A relation expression failed to parse or to evaluate."""

    def __init__(self, message: str, offset: int | None = None) -> None:
        self.offset = offset
        if offset is not None:
            message = f"{message} at offset {offset}"
        super().__init__(message)


class ConfigError(InputError):
    """A configuration value could not be interpreted."""


class ClosureLimitError(RelalgError):
    def __init__(self, count: int, cap: int) -> None:
        self.count = count
        self.cap = cap
        super().__init__(f"Closure exceeded the cap of {cap} elements ({count} generated so far)")


class NotAGroupError(RelalgError):
    """A closure lacks the group structure an operation needs."""


class NotCyclicError(NotAGroupError):
    pass


class RepresentationError(RelalgError):
    """A relation is not represented by a single vector where one is required."""

    def __init__(self, message: str, report=None) -> None:
        self.report = report
        super().__init__(message)


__all__ = [
    "RelalgError",
    "InputError",
    "ExpressionError",
    "ConfigError",
    "ClosureLimitError",
    "NotAGroupError",
    "NotCyclicError",
    "RepresentationError",
]
