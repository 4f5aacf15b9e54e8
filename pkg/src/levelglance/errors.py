"""Exception types raised by levelglance."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class UnsupportedModelError(ValueError):
    """The requested formula is not defined for this parity of N."""


class ValidityError(ValueError):
    """An approximation was used outside its regime of validity."""


class IntegratorError(RuntimeError):
    """The adaptive integrator failed (step-size underflow, NaN, step limit)."""


class ConvergenceError(RuntimeError):
    """Window refinement hit its cap before the probability settled.

    ``previous`` and ``last`` hold the final two probabilities computed.
    """

    def __init__(self, message, previous, last, window):
        super().__init__(message)
        self.previous = previous
        self.last = last
        self.window = window


class ContourError(RuntimeError):
    """Complex-path quadrature lost track of the square-root branch."""


class DegenerateSearchError(RuntimeError):
    """The objective is flat over the search interval."""
