"""Exception hierarchy shared by all modules.

Two families, matching the CLI exit-code contract: ValidationError (and its
DomainError subclass) for rejected inputs, NumericalError for failures of an
otherwise well-posed computation.
"""


class ValidationError(Exception):
    """Input rejected before any computation (shape, length, ordering, format)."""


class DomainError(ValidationError):
    """Argument outside a kernel's domain; the message names the constraint."""


class NumericalError(Exception):
    """A well-formed computation failed numerically."""


class SingularMatrixError(NumericalError):
    """SPD factorization hit a non-positive or negligible pivot."""

    def __init__(self, message: str, pivot_index: int | None = None):
        super().__init__(message)
        self.pivot_index = pivot_index


class CapacityError(NumericalError):
    """Requested order exceeds a documented exact-arithmetic ceiling."""
