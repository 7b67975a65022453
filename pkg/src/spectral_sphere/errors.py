"""Exception hierarchy shared by the numerical modules."""


class SpectralSphereError(Exception):
    """Base class for all package errors."""


class ConvergenceError(SpectralSphereError, ArithmeticError):
    """An iterative evaluation did not converge within its term/iteration budget."""


class AccuracyLossError(SpectralSphereError, ArithmeticError):
    """A divergent asymptotic sum could not reach the requested accuracy."""


class SingularDenominatorError(SpectralSphereError, ZeroDivisionError):
    """The reflection-amplitude denominator vanished (a spectral singularity)."""


class LogDerivativePoleError(SpectralSphereError, ZeroDivisionError):
    """A Bessel/Hankel value vanished, so its logarithmic derivative is undefined."""


class DispersionBranchError(SpectralSphereError, ValueError):
    """The square-root argument of the dispersion relation left the principal branch."""


class NoConvergenceError(ConvergenceError):
    """Newton refinement failed; ``best`` holds the best iterate found."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ModeJumpError(SpectralSphereError):
    """Refinement converged onto a neighbouring mode instead of the seeded one."""

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class CatalogError(SpectralSphereError, ValueError):
    """Malformed media catalog; carries the offending line number."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
