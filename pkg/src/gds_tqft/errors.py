"""Exception types raised across the package.

Class names double as the error names reported by the command line.
"""


class GdsError(Exception):
    """Base class for all package errors."""


class EmptyInput(GdsError, ValueError):
    pass


class MixedDimension(GdsError, ValueError):
    pass


class RepeatedVertexInFacet(GdsError, ValueError):
    pass


class UnknownVertex(GdsError, KeyError):
    pass


class UnknownManifold(GdsError, KeyError):
    pass


class TooLarge(GdsError, ValueError):
    pass


class BadDegree(GdsError, ValueError):
    pass


class NotACocycle(GdsError, ValueError):
    pass


class PairingDegenerate(GdsError, ArithmeticError):
    pass


class DegreeMismatch(GdsError, ValueError):
    pass


class NotIdempotent(GdsError, ValueError):
    pass


class NotFlat(GdsError, ValueError):
    pass


class NotAutomorphism(GdsError, ValueError):
    pass


class InternalSignMismatch(GdsError, AssertionError):
    pass


class ParseError(GdsError, ValueError):
    pass


class NotAManifold(GdsError, ValueError):
    pass
