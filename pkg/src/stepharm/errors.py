"""Exception types raised by the stepharm numerical routines."""


class StepharmError(Exception):
    """Base class for all stepharm-specific errors."""


class DomainError(StepharmError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class GammaPoleError(DomainError):
    """Gamma function evaluated at a non-positive integer."""


class ConvergenceError(StepharmError, RuntimeError):
    """An adaptive quadrature or refinement loop failed to converge."""


class BracketError(StepharmError, RuntimeError):
    """A root bracket did not contain a sign change.

    For the level equation this signals an internal inconsistency: every
    bracket between consecutive odd integers below the step height must
    contain exactly one root.
    """


class SingularityError(StepharmError, ZeroDivisionError):
    """A denominator that should be nonzero vanished numerically."""


class DispersionError(StepharmError, RuntimeError):
    """A reflected wave packet is too broadened for its delay to be localized."""
