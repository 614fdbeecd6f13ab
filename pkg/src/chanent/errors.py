"""Exception types raised across the package."""


class ChanentError(Exception):
    """Base class for all package errors."""


class DimensionError(ChanentError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class ContractViolation(ChanentError, ValueError):
    """An input breaks a numerical precondition (Hermiticity, positivity, ...)."""


class ValidationError(ChanentError, ValueError):
    """A channel, state or stochastic matrix failed validation."""


class CapacityError(ChanentError, ValueError):
    """The problem size exceeds what the exact solvers support."""
