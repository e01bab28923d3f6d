"""Exception hierarchy shared by every opineq module."""


class OpIneqError(Exception):
    """Base class for all opineq errors."""


class DimensionMismatch(OpIneqError, ValueError):
    pass


class AsymmetricInput(OpIneqError, ValueError):
    pass


class DomainError(OpIneqError, ValueError):
    """A scalar argument lies outside the function's domain."""


class SpectrumOutOfDomain(DomainError):
    """Some eigenvalue of a matrix argument lies outside the function's domain.

    This marks an invalid instance (a violated theorem hypothesis), not a
    numerical failure.
    """


class EigenConvergenceError(OpIneqError, ArithmeticError):
    pass


class NonFiniteIntegrand(OpIneqError, ArithmeticError):
    pass


class InvalidWeight(OpIneqError, ValueError):
    pass


class UnsupportedConvexity(OpIneqError, ValueError):
    """The function is neither operator convex nor operator concave."""


class NotApplicable(OpIneqError):
    """A theorem's hypothesis does not cover this instance.

    Campaigns record these as skips rather than failures.
    """


class NotDifferentiable(NotApplicable, ValueError):
    pass


class UnsupportedOrientation(NotApplicable, ValueError):
    pass


class NegativeWeight(InvalidWeight, NotApplicable):
    pass
