"""Exception types raised across the package."""


class RiemannAuxError(Exception):
    """Base class for every error raised by this package."""


class PoleError(RiemannAuxError, ZeroDivisionError):
    """Evaluation requested at (or numerically on top of) a pole."""


class DomainError(RiemannAuxError, ValueError):
    """Argument outside the domain an operation supports."""


class BranchError(DomainError):
    """Argument lies on a branch cut of the requested determination."""


class PreconditionError(DomainError):
    """A documented precondition (region membership, parameter range) fails."""


class ConvergenceError(RiemannAuxError, ArithmeticError):
    """An iterative procedure failed to reach the requested accuracy."""


class BoundaryZeroError(ConvergenceError):
    """The function vanishes (numerically) on a contour used for counting."""
