"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: domain errors -> 2, numeric errors -> 3,
property violations -> 4.
"""

from __future__ import annotations


class ImmseError(Exception):
    """Base class for library errors."""


class DomainError(ImmseError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(ImmseError, ArithmeticError):
    """A numerical procedure failed to reach its accuracy target."""

    def __init__(self, message: str, residual: float | None = None, gamma: float | None = None):
        super().__init__(message)
        self.residual = residual
        self.gamma = gamma


class ConsistencyError(ImmseError, ValueError):
    """Two curves violate an ordering that must hold between them."""

    def __init__(self, message: str, gamma: float | None = None):
        super().__init__(message)
        self.gamma = gamma


class PropertyViolation(ImmseError):
    """A structural property (e.g. single crossing) failed on computed data."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class CapacityError(ImmseError, ValueError):
    """Requested codebook is larger than the desk-scale limits."""
