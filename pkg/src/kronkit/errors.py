"""Exception hierarchy shared by every kronkit module."""


class KronkitError(Exception):
    """Base class for all kronkit errors."""


class ShapeError(KronkitError, ValueError):
    """Operand dimensions do not conform."""


class SizeError(ShapeError):
    """A result would overflow the platform index type."""


class RangeError(KronkitError, ValueError):
    """An index, rank or mode lies outside its admissible range."""


class DomainError(KronkitError, ValueError):
    """Input outside the mathematical domain (NaN, zero matrix, ...)."""


class DegenerateInputError(DomainError):
    """Input for which the requested factorization is not well defined."""


class ContractError(KronkitError, ValueError):
    """A caller-side precondition (e.g. sortedness) was violated."""


class ConvergenceError(KronkitError, ArithmeticError):
    """An iterative kernel hit its iteration cap.

    The last iterate is kept on ``last`` so callers can inspect or reuse it.
    """

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class ParseError(KronkitError, ValueError):
    """Malformed text tensor file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FormatError(KronkitError, ValueError):
    """Malformed binary tensor file."""
