"""Exception hierarchy shared by every module."""

from __future__ import annotations


class OddInducedError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(OddInducedError, ValueError):
    """Edge-list text could not be parsed. ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeaderError(GraphParseError):
    pass


class MalformedEdgeError(GraphParseError):
    pass


class VertexOutOfRangeError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class EdgeCountMismatchError(GraphParseError):
    pass


class PreconditionError(OddInducedError, ValueError):
    """An operation was called on inputs outside its contract."""


class HypothesisViolation(OddInducedError):
    """A structural assumption of an extraction lemma does not hold on this input."""


class InternalDefect(OddInducedError, AssertionError):
    """A proven invariant failed. Indicates a bug, never bad input."""

    def __init__(self, message: str, trace: list | None = None) -> None:
        self.trace = list(trace) if trace else []
        super().__init__(message)


class OracleLimitExceeded(OddInducedError):
    """A connected component is too large for exhaustive search."""
