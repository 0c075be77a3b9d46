"""Exception hierarchy for the mcom package."""


class McomError(Exception):
    """Base class for all mcom errors."""


class InvalidParameter(McomError):
    """A physical or effective parameter violates its domain (e.g. a non-positive rate)."""


class NonConvergence(McomError):
    """The mean-field fixed-point iteration exhausted its iteration budget.

    Carries the best residual seen so the caller can decide whether to retry
    with a smaller relaxation factor.
    """

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class EigenFailure(McomError):
    """The eigensolver did not converge on a drift matrix (degenerate input)."""


class UnstableSystem(McomError):
    """A steady-state covariance was requested for a dynamically unstable drift matrix."""


class SingularSolve(McomError):
    """The vectorized Lyapunov system is singular (marginally stable drift matrix)."""


class NonPhysicalCM(McomError):
    """A covariance matrix fails the Gaussian physicality bound (symplectic eigenvalue below 1/2)."""


class DegenerateDeterminant(McomError):
    """A determinant required in a logarithm is too close to zero to evaluate."""


class DomainError(McomError):
    """Argument outside the domain of the bosonic entropy function."""


class InvalidSpec(McomError):
    """A sweep specification is malformed (bad axis, duplicate parameters, ...)."""


class UnknownPreset(McomError):
    """Requested figure preset name is not registered."""


class ConfigError(McomError):
    """A run configuration file is missing, unparsable, or inconsistent."""
