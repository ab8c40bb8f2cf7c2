"""Exception types raised by the solvers."""


class ModelError(ValueError):
    """Base class for invalid inputs to the model."""


class DomainError(ModelError):
    """An argument lies outside its mathematical domain."""


class InfeasibleBandwidthError(ModelError):
    """The requested attention budget is not strictly inside (0, h(1))."""


class DegenerateSignalError(ModelError):
    """A signal with both posterior means equal to zero."""


class InfeasiblePointError(ModelError):
    """No point of the requested level curve exists at the given abscissa."""


class UnsupportedCostError(ModelError):
    """The attention cost lacks a quantity an operation needs."""


class InvalidPrimitivesError(ModelError):
    """Ability / effort primitives violate the model's consistency equations."""


class LPInfeasibleError(ModelError):
    """A linear program has no feasible point."""
