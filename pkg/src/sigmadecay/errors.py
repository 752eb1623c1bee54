"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter or query falls outside the admissible domain."""


class UnknownDatum(ValueError):
    """Requested initial datum is not in the catalog."""


class ToleranceNotMet(RuntimeError):
    """Quadrature could not reach the requested tolerance within budget.

    Raised only by :meth:`QuadResult.require`; the integrators themselves
    return their best estimate with ``converged`` set to ``False``.
    """


class NonFiniteIntegrand(ArithmeticError):
    """Integrand returned NaN or infinity at a quadrature node."""


class DegenerateFit(ValueError):
    """Rate fit attempted on fewer than three usable points."""


class StepTooLarge(ValueError):
    """ODE oracle step exceeds the stability/accuracy budget."""


class ZoneEmpty(ValueError):
    """A frequency zone for a bound check contains no grid points."""
