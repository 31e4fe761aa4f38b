"""Exception types shared across the package."""


class NumericalError(RuntimeError):
    """Base class for numerical failures (distinct from bad arguments)."""


class SingularMatrixError(NumericalError):
    """A matrix required to be (numerically) nonsingular is not."""


class RankDeficientError(NumericalError):
    """A span or operator does not have the rank the operation needs."""


class SearchFailedError(NumericalError):
    """Every optimizer start ended inside the penalty region."""

    def __init__(self, message: str, best_value: float):
        super().__init__(message)
        self.best_value = best_value


class DegenerateTargetError(NumericalError):
    """A randomly drawn target function is numerically zero on the measure."""
