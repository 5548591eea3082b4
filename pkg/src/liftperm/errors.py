"""Exception types shared across the package."""


class LiftpermError(Exception):
    """Base class for all errors raised by liftperm."""


class ParseError(LiftpermError, ValueError):
    pass


class NonExactDivision(LiftpermError, ArithmeticError):
    """Polynomial division left a nonzero remainder."""


class OutOfRange(LiftpermError, ValueError):
    pass


class IndexOutOfRange(LiftpermError, IndexError):
    pass


class TooShort(LiftpermError, ValueError):
    """A composition has too few parts for the requested operation."""


class SizeLimitExceeded(LiftpermError, ValueError):
    pass


class SingularMatrix(LiftpermError, ArithmeticError):
    pass


class NotNormalized(LiftpermError, ValueError):
    """Subset parameters are not in the (strictly) positive orthant."""


class DegenerateBlock(LiftpermError, ValueError):
    pass


class DimensionTooHigh(LiftpermError, ValueError):
    pass


class NotInPolytope(LiftpermError, ValueError):
    pass


class AmbiguousCell(LiftpermError):
    """A point lies on the boundary between several subdivision cells."""

    def __init__(self, candidates):
        self.candidates = list(candidates)
        names = ", ".join(str(c) for c in self.candidates)
        super().__init__(f"point lies in several cells: {names}")


class InvalidBuildingSet(LiftpermError, ValueError):
    pass
