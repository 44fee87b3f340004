"""Exception hierarchy shared across the package.

Everything raised on purpose derives from RealQuadError so the CLI can map
domain rejections to a single exit code.
"""


class RealQuadError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RealQuadError, ValueError):
    """Malformed combinatorics text or an entry out of range."""


class InadmissibleError(RealQuadError, ValueError):
    """An operation required an admissible combinatorics and did not get one."""


class ReductionInadmissible(RealQuadError):
    """Simplification produced a vector that is not admissible.

    This certifies that the original combinatorics is strongly obstructed.
    The offending reduced vector is attached as ``reduced``.
    """

    def __init__(self, message, reduced):
        super().__init__(message)
        self.reduced = reduced


class IncompatiblePattern(RealQuadError, ValueError):
    """No real quadratic map can realize the given mapping pattern."""


class NotCoPolynomialError(RealQuadError, ValueError):
    """Input combinatorics does not have co-polynomial shape."""


class NotPolynomialError(RealQuadError, ValueError):
    """Input combinatorics does not have polynomial shape."""


class ChebyshevOrSquareExcluded(RealQuadError, ValueError):
    """The two extreme polynomial vectors have no co-polynomial partner."""


class WrongShapeError(RealQuadError, ValueError):
    """Operation restricted to a particular topological shape."""


class DegenerateCriticalValues(RealQuadError, ValueError):
    """The two critical values coincide; no quadratic map fits."""


class DegenerateMapError(RealQuadError, ValueError):
    """Coefficient matrix has zero determinant."""


class TargetOutsideImage(RealQuadError, ValueError):
    """Branch solve asked for a preimage of a point outside the image interval."""


class OrderViolation(RealQuadError):
    """Marked points crossed during a pullback step (numerical breakdown)."""


class InvalidExplicitState(RealQuadError, ValueError):
    """An explicit start vector violates the marked-state constraints."""


class MismatchedK1(RealQuadError, ValueError):
    """A bone list mixes combinatorics with different primary kneading values."""


class EnumerationBoundExceeded(RealQuadError, ValueError):
    """Requested enumeration size is above the configured bound."""
