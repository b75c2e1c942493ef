# src/semiarith/core/errors.py
from __future__ import annotations


class SemiarithError(Exception):
    """Base exception for all semiarith errors."""

    exit_code: int = 2


class PreconditionError(SemiarithError):
    """Raised when an operation is called outside its documented domain."""

    exit_code = 2


class FieldError(PreconditionError):
    """Raised for invalid number fields or mixed-field arithmetic."""

    pass


class BadPrimeError(PreconditionError):
    """Raised when a prime is excluded (divides a discriminant, equals 2, ...)."""

    def __init__(self, message: str, prime: int | None = None):
        super().__init__(message)
        self.prime = prime


class UnsupportedError(PreconditionError):
    """Raised for inputs outside the implemented scope."""

    pass


class DeterminantError(PreconditionError):
    """Raised when a matrix that must have determinant one does not."""

    pass


class ReducibleGroupError(PreconditionError):
    """Raised when an irreducible group is required but none was found."""

    pass


class EnumerationCapExceeded(PreconditionError):
    """Raised when an enumeration would exceed its configured cap."""

    def __init__(self, message: str, size: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.size = size
        self.cap = cap


class SearchExhaustedError(PreconditionError):
    """Raised when a bounded word search finds no witness."""

    pass


class StabilizationError(PreconditionError):
    """Raised when an iterative construction does not stabilize in budget."""

    pass


class DocumentError(PreconditionError):
    """Raised for malformed group documents."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.column = column


class InternalConsistencyError(SemiarithError):
    """Raised when a mathematical guarantee is violated; should never occur."""

    exit_code = 3
