"""Exception types shared across the package."""

from __future__ import annotations


class TrajmultError(Exception):
    """Base class for all package errors."""


class ParseError(TrajmultError, ValueError):
    """Syntax or semantic error in a polynomial expression string."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class DimensionMismatch(TrajmultError, ValueError):
    """Variable counts or vector lengths do not agree."""


class PreconditionError(TrajmultError, ValueError):
    """A stated precondition of an operation is violated.

    The message names the violated condition, e.g. "requires ξ(0) ≠ 0".
    """


class BoundDomainError(PreconditionError):
    """Bound formula evaluated outside its validity domain."""


class InternalInconsistencyError(TrajmultError, RuntimeError):
    """The two independent multiplicity methods disagreed.

    This signals an implementation bug, never a property of the input.
    """
