"""Exception types shared across the package."""


class SexticsError(Exception):
    """Base class for all errors raised by this package."""


class NoCubeRoot(SexticsError):
    """The field has no primitive third root of unity."""


class DivisionByZero(SexticsError, ZeroDivisionError):
    pass


class DomainMismatch(SexticsError, TypeError):
    """Operands live in different coefficient domains or rings."""


class UnknownVariable(SexticsError, KeyError):
    pass


class DegreeTooSmall(SexticsError, ValueError):
    pass


class NotDivisible(SexticsError, ArithmeticError):
    """Exact polynomial division failed."""


class ZeroDivisor(SexticsError, ZeroDivisionError):
    pass


class DegenerateParams(SexticsError, ValueError):
    pass


class PointOnQ(SexticsError, ValueError):
    """The candidate triple point lies on the quadric, so the matrix
    normalisation dividing by its value is invalid."""


class FieldTooLarge(SexticsError, ValueError):
    pass


class FieldTooSmall(SexticsError, ValueError):
    """Characteristic too small for derivative-based singularity analysis."""


class PointNotOnSurface(SexticsError, ValueError):
    pass


class NotTriplePoint(SexticsError, ValueError):
    pass


class DegeneratePlaneSection(SexticsError, ValueError):
    """The surface contains the candidate witness plane."""


class DegenerateConfiguration(SexticsError, ValueError):
    pass


class ContainsCoordinatePlane(SexticsError, ValueError):
    pass


class UnknownLabel(SexticsError, KeyError):
    pass


class ParseError(SexticsError, ValueError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position
