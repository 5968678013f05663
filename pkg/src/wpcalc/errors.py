"""Exception hierarchy.

Input-level errors (bad arguments, unparseable literals, out-of-range
requests) all derive from ``InputError`` and map to CLI exit code 2.
``InternalError`` subclasses signal a broken invariant inside the engine
and map to exit code 1; they should never fire on valid inputs.
"""


class WpcError(Exception):
    """Base class for all package errors."""


class InputError(WpcError):
    """User-correctable error: bad value, mismatch, unsupported request."""


class InternalError(WpcError):
    """Invariant violation inside the engine; indicates a bug."""


class ParseError(InputError):
    pass


class UnknownVertex(InputError):
    pass


class QuiverMismatch(InputError):
    pass


class DisconnectedQuiver(InputError):
    pass


class NonNegativityViolation(InternalError):
    pass


class NoTranslationForLine(InputError):
    pass


class CategoryMismatch(InputError):
    pass


class InvalidArc(InputError):
    pass


class BoundExceeded(InputError):
    pass


class LengthMismatch(InputError):
    pass


class WeightMismatch(InputError):
    pass


class ModelMismatch(InputError):
    pass


class UnknownPoint(InputError):
    pass


class NotVertexLike(InputError):
    pass


class NotExceptionalTorsion(InputError):
    pass
