class NonlevelError(Exception):
    """Base class for all errors raised by nonlevel."""


class InvalidInputError(NonlevelError, ValueError):
    """Input outside the domain of an operation (bad sequence, bad range, ...)."""


class NotDecomposableError(NonlevelError):
    """Greedy type-vector extraction could not decompose a Hilbert function."""


class InvariantError(NonlevelError, AssertionError):
    """An internal consistency check failed. Always a bug."""
