"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class RangeError(OverflowError):
    """A result would overflow; raised instead of returning ``inf``."""


class NumericError(RuntimeError):
    """An iterative numerical routine failed to converge."""
