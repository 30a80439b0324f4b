"""Exception hierarchy shared by all modules."""


class DQError(Exception):
    """Base class for every error raised by this package."""


class ZeroInput(DQError, ValueError):
    pass


class NotASquare(DQError, ValueError):
    pass


class MixedFields(DQError, ValueError):
    pass


class DivisionByZero(DQError, ZeroDivisionError):
    pass


class InvalidParams(DQError, ValueError):
    pass


class PointNotOnCurve(DQError, ValueError):
    pass


class NonAffineImage(DQError, ValueError):
    """The preimage of a point on E_m lies at infinity on the projective closure of D_m."""


class PoleOfG(DQError, ZeroDivisionError):
    pass


class MapUndefined(DQError, ValueError):
    pass


class DegenerateTriple(DQError, ValueError):
    pass


class DegenerateQuadruple(DegenerateTriple):
    """Orbits were disjoint but the resulting entries still collide."""


class SquareConditionFails(DQError, ValueError):
    pass


class ProductMismatch(DQError, ValueError):
    pass


class NoBasePoint(DQError, LookupError):
    pass
