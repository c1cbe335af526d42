"""Exception hierarchy.

Every domain error derives from :class:`GeometryError`, itself a
``ValueError``, so callers that only care about "bad input" can catch one
class.
"""


class GeometryError(ValueError):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(GeometryError):
    pass


class NotHermitian(GeometryError):
    pass


class NoConvergence(GeometryError):
    pass


class DomainError(GeometryError):
    """A matrix function was asked to act outside its domain."""


class SingularPencil(GeometryError):
    pass


class NotUnitary(GeometryError):
    pass


class NotStrictlyPositive(GeometryError):
    pass


class InvalidState(GeometryError):
    """A density matrix or purification violates its defining invariants."""


class BasePointMismatch(GeometryError):
    pass


class SingularBase(GeometryError):
    pass


class NotTangent(GeometryError):
    pass


class DegenerateFrame(GeometryError):
    pass


class StepTooLarge(GeometryError):
    pass


class IndexOutOfRange(GeometryError):
    pass
