"""Exception types raised across the package."""


class GoursatError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(GoursatError, ValueError):
    pass


class InvalidDataError(GoursatError, ValueError):
    pass


class DomainError(GoursatError, ValueError):
    pass


class SingularEvaluationError(GoursatError, ValueError):
    """A derivative was requested exactly at a singular corner."""


class ConvergenceError(GoursatError, RuntimeError):
    """Nested quadrature did not settle within the bisection cap.

    ``estimate`` is the accumulated value when the cap was hit and ``gap`` the
    last whole-tail versus two-halves discrepancy.
    """

    def __init__(self, message, estimate=None, gap=None):
        super().__init__(message)
        self.estimate = estimate
        self.gap = gap


class RootFindingError(GoursatError, RuntimeError):
    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class RankDeficiencyError(GoursatError, ArithmeticError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConfigError(GoursatError, ValueError):
    pass
