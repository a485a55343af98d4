"""Exception types raised by the package."""


class MatrixFormatError(ValueError):
    """A matrix file could not be parsed or holds unsupported content."""


class SingularMatrixError(ValueError):
    """A square system is singular to working precision."""


class RankDeficientError(ValueError):
    """A factor that must have full rank does not."""


class ConvergenceError(RuntimeError):
    """An iterative LAPACK routine failed to converge."""
