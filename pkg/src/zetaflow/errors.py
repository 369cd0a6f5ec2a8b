"""Exception hierarchy shared by all zetaflow modules."""


class ZetaflowError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ZetaflowError, ValueError):
    """Argument lies outside the region where a method is valid."""


class PoleError(DomainError):
    """Argument is (numerically) at a pole."""


class DenominatorError(DomainError):
    """Argument is at a zero of 1 - 2**(1 - z), where zeta = eta / (1 - 2**(1 - z)) breaks down."""


class ConvergenceError(ZetaflowError, ArithmeticError):
    """A series or iteration could not reach the requested accuracy."""


class NoConvergence(ConvergenceError):
    """Newton polishing did not converge within its iteration budget."""


class SingularityError(ZetaflowError, ArithmeticError):
    """The Newton vector field is singular (zeta' vanishes)."""
