"""Exception types shared across the package."""


class SemiringError(Exception):
    """Base class for all errors raised by semiexact."""


class DomainError(SemiringError, ValueError):
    """An element or matrix does not belong to the expected semiring."""


class ShapeError(SemiringError, ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class ArgumentError(SemiringError, ValueError):
    """An argument is malformed (empty set, bad modulus, mismatched parameters)."""


class UnsupportedOperation(SemiringError, TypeError):
    """The operation is not available for this kind of semiring."""


class BudgetExceeded(SemiringError, RuntimeError):
    """An exhaustive search would exceed its configured budget."""


class PreconditionError(SemiringError, ValueError):
    """A documented precondition of the operation does not hold."""


class ParseError(SemiringError, ValueError):
    """A text input could not be parsed.

    ``line`` and ``column`` are 1-based and refer to the offending token.
    """

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)
