"""Exception hierarchy shared by all modules."""


class BistarError(Exception):
    """Base class for errors raised by this package."""


class ArgumentError(BistarError, ValueError):
    """Malformed or out-of-range argument (unknown name, bad alpha, empty series)."""


class DomainError(BistarError, ValueError):
    """Input outside the mathematical domain of an operation."""


class NumericError(BistarError, ArithmeticError):
    """A numerical procedure failed; ``diagnostics`` carries details."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class LocalUnivalenceError(NumericError):
    """f'(z) vanished at an evaluation point."""


class PoleError(NumericError):
    """The function has a pole at (or numerically at) an evaluation point."""


class UnsupportedOperationError(BistarError, NotImplementedError):
    """The requested operation is not available for this object."""
