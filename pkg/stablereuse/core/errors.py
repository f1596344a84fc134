"""Exception hierarchy for stablereuse."""

from typing import Optional


class SppError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(SppError, ValueError):
    """An argument is out of range or of the wrong kind."""


class PreconditionError(InvalidArgumentError):
    """An operation's documented precondition does not hold."""


class ValidationError(SppError, ValueError):
    """A value violates a type invariant."""


class InstanceParseError(SppError, ValueError):
    """A file could not be parsed into the expected document."""

    def __init__(self, message: str, *, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        context = []
        if field is not None:
            context.append(f"field '{field}'")
        if line is not None:
            context.append(f"line {line}")
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)


class EnumerationLimitError(SppError, ValueError):
    """The exhaustive search space exceeds the configured cap."""


class ConfigError(SppError, ValueError):
    """An experiment configuration is invalid."""


class CounterexampleNotFoundError(SppError, AssertionError):
    """No unsolvable constraint graph was found for the fixed preference matrices."""
