"""Exception types shared across the package."""


class IsolabError(Exception):
    """Base class for all errors raised by isolab."""


class NotConvex(IsolabError):
    """Vertex list has a reflex turn or does not wind once around."""


class Degenerate(IsolabError):
    """Fewer than three distinct vertices, or vanishing area."""


class OriginOutside(IsolabError):
    """Gauge origin is not strictly inside the body."""


class LevelOutOfRange(IsolabError):
    """Requested mesh refinement level outside the supported range."""


class EmptyInterior(IsolabError):
    """Mesh has no interior nodes after applying the boundary condition."""


class NoConvergence(IsolabError):
    """Eigenvalue iteration failed to converge within the iteration cap."""


class BadK(IsolabError):
    """Regular polygon generator called with fewer than three sides."""


class BadParameter(IsolabError):
    """Shape family parameter outside its admissible domain."""


class InsufficientData(IsolabError):
    """Not enough points for a meaningful regression."""


class AccuracyBudgetExceeded(IsolabError):
    """Every requested data point failed the solver accuracy budget."""


class TooFarFromBall(IsolabError):
    """Body violates the near-ball hypothesis of the gauge comparison."""


class UsageError(IsolabError):
    """Command line invoked with an invalid flag combination."""
