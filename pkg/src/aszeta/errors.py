"""Exception hierarchy shared by every module in the package."""


class AszetaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AszetaError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class FieldMismatchError(AszetaError, TypeError):
    """Operands belong to different fields and no embedding was requested."""


class EmbeddingError(AszetaError, ValueError):
    """No ring embedding exists between the two fields (degree mismatch)."""


class NotInKernelError(AszetaError, ValueError):
    """A translation constant c lies outside the kernel space W.

    Carries the residual obstruction: the quantity whose vanishing would
    certify membership.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DivisibilityError(AszetaError, ValueError):
    """Left decomposition of an additive polynomial left a nonzero remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class ResourceBudgetError(AszetaError, RuntimeError):
    """An enumeration would exceed the configured element budget."""

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class UndecidableError(AszetaError, RuntimeError):
    """Neither the closed form nor the oracle can settle the question in budget."""


class InvariantViolation(AszetaError, RuntimeError):
    """An internal cross-check failed; this signals a bug, not bad input."""


class ParseError(AszetaError, ValueError):
    """A curve specification failed to parse or validate."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
