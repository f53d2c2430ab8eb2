"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the admissible parameter range."""


class SmallestSingularValueNotIsolated(ArithmeticError):
    """The null space used for the barycentric weights is not one-dimensional.

    Raised when the residual of the computed null vector is not clearly
    separated from the next singular value, i.e. the interpolant is
    (close to) degenerate or does not exist for the given nodes.
    """

    def __init__(self, ratio, message=None):
        self.ratio = ratio
        super().__init__(message or f"singular value gap too small (ratio {ratio:.3g})")


class InterpolantConstructionFailed(RuntimeError):
    def __init__(self, iteration, cause):
        self.iteration = iteration
        super().__init__(f"interpolant construction failed at iteration {iteration}: {cause}")


class PreconditionNotMet(ValueError):
    """Bounds were requested for a report that does not satisfy their hypotheses."""


class InvalidCorrection(ArithmeticError):
    """A node correction produced nodes that are unordered or leave (-1, 1)."""


class Breakdown(ArithmeticError):
    """AAA could not compute barycentric weights."""
