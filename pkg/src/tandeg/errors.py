"""Exception hierarchy.

Every error raised by the library derives from :class:`TandegError`, so callers
(the CLI in particular) can map whole families to exit codes.
"""


class TandegError(Exception):
    pass


# field_core
class NonPrimeCharacteristic(TandegError, ValueError):
    pass


class DivisionByZero(TandegError, ZeroDivisionError):
    pass


class FieldMismatch(TandegError, ValueError):
    pass


class NotAnExtension(TandegError, ValueError):
    pass


class ReducibleModulus(TandegError, ValueError):
    pass


# poly_algebra
class BothZero(TandegError, ValueError):
    pass


class AllConstantInU(TandegError, ValueError):
    pass


# proj_geom
class CoincidentPoints(TandegError, ValueError):
    pass


class InvalidLine(TandegError, ValueError):
    pass


# curve_model / gauss_tangency
class DegenerateInput(TandegError, ValueError):
    pass


class RamifiedPoint(TandegError, ValueError):
    pass


class DegenerateTangentSystem(TandegError, ValueError):
    pass


class InsufficientPoints(TandegError, ValueError):
    pass


# vspace_autos
class ZeroF(TandegError, ValueError):
    pass


class ZeroAlpha(TandegError, ValueError):
    pass


class UnsupportedKind(TandegError, ValueError):
    pass


class IdentityAutomorphism(TandegError, ValueError):
    pass


# as_function_field
class AlphaNotInFq(TandegError, ValueError):
    pass


class DerivativeUndefined(TandegError, ValueError):
    pass


class UnsupportedShape(TandegError, ValueError):
    pass


# constructors
class HypothesisViolation(TandegError, ValueError):
    pass


class BadCharacteristic(HypothesisViolation):
    pass


# serialization
class MalformedInput(TandegError, ValueError):
    pass
