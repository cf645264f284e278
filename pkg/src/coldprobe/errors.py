"""Exception hierarchy shared by all coldprobe modules."""


class ColdprobeError(Exception):
    """Base class for all library errors."""


class DomainError(ColdprobeError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation was requested at (or too close to) a pole."""


class DegenerateRootsError(ColdprobeError, RuntimeError):
    """Cubic roots of the Matsubara denominator are not simple.

    The digamma closed form assumes simple roots; the parameter point is
    reported as unsupported instead of silently returning garbage.
    """


class QuadratureError(ColdprobeError, RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy.

    Attributes
    ----------
    estimate : float
        Best available value of the integral.
    error_bound : float
        Estimated absolute error of ``estimate``.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ConvergenceError(ColdprobeError, RuntimeError):
    """A finite-difference or iterative estimate failed its convergence check."""


class UnphysicalStateError(ColdprobeError, ValueError):
    """A covariance matrix violates positivity or the Heisenberg bound."""
