"""Exception hierarchy shared by every module of the package."""


class BoroczkyError(Exception):
    """Base class for all errors raised by this package."""


class DescriptorMismatch(BoroczkyError, TypeError):
    """Operands live in different fields."""


class DivisionByZero(BoroczkyError, ZeroDivisionError):
    pass


class UnsupportedField(BoroczkyError, ValueError):
    """The requested operation is not available for this kind of field."""


class InvalidField(BoroczkyError, ValueError):
    """A field descriptor failed its construction checks."""


class ParseError(BoroczkyError, ValueError):
    pass


# projgeom
class CoincidentPoints(BoroczkyError, ValueError):
    pass


class CoincidentLines(BoroczkyError, ValueError):
    pass


class DuplicateLines(BoroczkyError, ValueError):
    pass


class NotDoublyPerspective(BoroczkyError, ValueError):
    pass


# polyalg
class RingMismatch(BoroczkyError, TypeError):
    pass


class ZeroDivisor(BoroczkyError, ZeroDivisionError):
    """A divisor polynomial is zero."""


class ZeroInput(BoroczkyError, ValueError):
    pass


class VariableAbsent(BoroczkyError, ValueError):
    pass


class ResourceExceeded(BoroczkyError, RuntimeError):
    """A Groebner computation ran past its reduction-step budget."""


# constructions
class InternalMismatch(BoroczkyError, AssertionError):
    """Closed-form coordinates disagree with join/meet; always a bug."""


class GenericParameter(BoroczkyError, ValueError):
    pass


class DerivationMismatch(BoroczkyError, AssertionError):
    pass


class ParameterInvalid(BoroczkyError, ValueError):
    pass


class ForbiddenA(ParameterInvalid):
    pass


class CoefficientVanishes(ParameterInvalid):
    pass


# ellcurve
class MapUndefined(BoroczkyError, ValueError):
    pass


class PointNotOnCurve(BoroczkyError, ValueError):
    pass


# containment
class DegreeBoundTooSmall(BoroczkyError, RuntimeError):
    pass


# render
class EmptyWindow(BoroczkyError, ValueError):
    pass


class ChartDegenerate(BoroczkyError, ValueError):
    pass
