"""Exception hierarchy shared by all modules.

Everything the CLI maps to exit code 2 derives from :class:`DomainError`.
"""


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class PoleError(DomainError):
    pass


class BranchPointError(DomainError):
    pass


class MarginError(DomainError):
    """Argument outside the enforced convergence margin of a series."""


class ClearanceError(DomainError):
    """A path passes too close to a singular point."""


class ParityError(DomainError):
    pass


class LabelingError(DomainError):
    pass


class NumericalError(ArithmeticError):
    """An iterative method failed to meet its tolerance."""


class NoConvergenceError(NumericalError):
    pass


class StepUnderflowError(NumericalError):
    pass


class CollisionError(StepUnderflowError):
    """Root tracking step underflowed near a root collision."""


class AmbiguousMatchError(NumericalError):
    pass
