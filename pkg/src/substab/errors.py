"""Exception hierarchy shared by the solver and the command-line tool."""


class StabilizeError(Exception):
    """Base class for every error raised by :mod:`substab`."""


class DimensionError(StabilizeError, ValueError):
    """Input matrix has the wrong shape (non-square or mismatched sizes)."""


class NumericalError(StabilizeError, ArithmeticError):
    """A numerical routine failed or produced an unusable result."""


class NotPositiveDefiniteError(NumericalError):
    pass


class SpectralRadiusError(NumericalError):
    """Raised when a routine requiring a Schur-stable input gets ``rho >= 1``."""


class IllConditionedError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass


class InfeasibleError(StabilizeError, ValueError):
    """A triple violates the (S, U, B) feasibility constraints."""
