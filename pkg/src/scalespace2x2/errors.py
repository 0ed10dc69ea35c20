"""Exception types raised across the package."""


class NegativeDiscriminant(ValueError):
    """The 2x2 symbol matrix has complex eigenvalues (happens for d > 0)."""


class NonRealResponse(ValueError):
    """A frequency response that should be real has a significant imaginary part."""


class PositiveD(ValueError):
    """Cross filters cannot be realized with real taps when d > 0."""


class DimensionMismatch(ValueError):
    pass


class SizeLimit(ValueError):
    pass


class DegenerateEigenbasis(ArithmeticError):
    """The eigenvector matrix of a symbol matrix is numerically singular."""


class EmptyFeasibleGrid(RuntimeError):
    pass
