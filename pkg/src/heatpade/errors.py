"""Exception types shared across the package."""


class HeatPadeError(Exception):
    """Base class for all numeric failures raised by this package."""


class QuadratureNotConverged(HeatPadeError):
    """Periodic quadrature did not reach the requested tolerance within the panel cap."""


class UnsupportedOrder(HeatPadeError):
    """Requested expansion order is outside the range the formulas cover."""


class SeriesNotConverged(HeatPadeError):
    """An infinite series cannot reach the requested accuracy with finitely many terms."""


class DegenerateDenominator(HeatPadeError):
    """Rational-function expansion at s=0 requires a nonzero constant denominator term."""


class NoSolutionFound(HeatPadeError):
    """No Newton start converged below the residual acceptance tolerance."""


class NoComplexPole(HeatPadeError):
    """All denominator roots are real; no spectral estimate can be extracted."""


class IllConditioned(HeatPadeError):
    """A linear-algebra subproblem is numerically singular."""
