"""Exception and warning types shared across the package."""


class CirclawError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CirclawError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(CirclawError, ArithmeticError):
    """A series or quadrature could not certify the requested accuracy."""


class DomainGapError(DomainError):
    """The published piecewise formula does not cover this argument.

    Raised only by the published-form evaluators; the authoritative
    routes cover the whole circle.
    """


class SignedLawError(CirclawError, ValueError):
    """The operation needs a nonnegative density but the law is signed."""


class RouteDivergenceWarning(UserWarning):
    """Two independent evaluation routes disagree beyond the diagnostic band."""


class SlowDecayWarning(UserWarning):
    """Coefficient decay is subexponential; truncation is unusually long."""


class MinimumLocationWarning(UserWarning):
    """The detected global minimum is not at the structurally expected angle."""
