"""Exception types shared across the package."""


class ReductionError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ReductionError, ValueError):
    pass


class InvalidVertexError(ReductionError, ValueError):
    pass


class ParseError(ReductionError, ValueError):
    pass


class EnumerationLimitError(ReductionError):
    """An exhaustive enumeration was requested on an instance above its limit."""


class BudgetExceeded(ReductionError):
    """A swap enumeration exhausted its candidate budget."""

    def __init__(self, budget, message=None):
        self.budget = budget
        super().__init__(message or f"enumeration budget of {budget} candidates exceeded")


class InvalidSwapError(ReductionError, ValueError):
    pass


class PreconditionError(ReductionError, ValueError):
    pass


class UnsupportedDegreeError(ReductionError, ValueError):
    pass


class InfeasibleKError(ReductionError, ValueError):
    pass


class DomainError(ReductionError, ValueError):
    pass


class TranscriptionError(ReductionError):
    """A gadget literal failed its own lemma checks."""


class NonStandardTourError(ReductionError, ValueError):
    pass
