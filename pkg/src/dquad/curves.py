"""The curves D_m: (x^2-q)(y^2-q) = m and E_m: W^2 = T^3 + (4q^2-2m)T^2 + m^2 T.

The group law is written once and works for any exact field whose elements
support ``+ - * /`` and ``==``: Fractions for E_m(Q), :class:`QuadExtElem`
for E_m(Q(sqrt q)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .errors import InvalidParams, PointNotOnCurve
from .exactmath import (
    QuadExtElem,
    RationalLike,
    as_rational,
    format_rational,
    parse_rational,
    sqrt_in_field,
)


@dataclass(frozen=True)
class Params:
    """Curve data q, m together with a base point (x1, y1) on D_m."""

    q: Fraction
    m: Fraction
    x1: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("q", "m", "x1", "y1"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        q, m, x1, y1 = self.q, self.m, self.x1, self.y1
        if q == 0:
            raise InvalidParams("q must be nonzero")
        if m == 0 or m == q * q:
            raise InvalidParams(f"m = {m} makes D_m singular (m must avoid 0 and q^2)")
        if x1 == 0 or y1 == 0:
            raise InvalidParams("base point needs x1 != 0 and y1 != 0")
        if (x1 * x1 - q) * (y1 * y1 - q) != m:
            raise InvalidParams(f"({x1}, {y1}) is not on D_m for q={q}, m={m}")

    @classmethod
    def from_base_point(cls, q: RationalLike, x1: RationalLike, y1: RationalLike) -> "Params":
        q, x1, y1 = as_rational(q), as_rational(x1), as_rational(y1)
        return cls(q, (x1 * x1 - q) * (y1 * y1 - q), x1, y1)

    @property
    def a2(self) -> Fraction:
        return 4 * self.q * self.q - 2 * self.m

    @property
    def a4(self) -> Fraction:
        return self.m * self.m

    @property
    def kx(self) -> Fraction:
        """x1^2 - q."""
        return self.x1 * self.x1 - self.q

    @property
    def ky(self) -> Fraction:
        """y1^2 - q."""
        return self.y1 * self.y1 - self.q

    def to_json(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("q", "m", "x1", "y1")}


@dataclass(frozen=True)
class EPoint:
    """Affine point (T, W) on E_m, or the point at infinity when both are None."""

    T: Any = None
    W: Any = None

    @property
    def is_infinity(self) -> bool:
        return self.T is None

    def to_json(self) -> dict:
        if self.is_infinity:
            return {"inf": True}
        if isinstance(self.T, QuadExtElem) or isinstance(self.W, QuadExtElem):
            raise ValueError("only points over Q serialize to JSON")
        return {"T": format_rational(self.T), "W": format_rational(self.W)}

    @classmethod
    def from_json(cls, obj: dict) -> "EPoint":
        if obj.get("inf"):
            return INFINITY
        return cls(parse_rational(str(obj["T"])), parse_rational(str(obj["W"])))

    def __repr__(self):
        if self.is_infinity:
            return "EPoint(inf)"
        return f"EPoint({self.T}, {self.W})"


INFINITY = EPoint()


@dataclass(frozen=True)
class DPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __iter__(self):
        return iter((self.x, self.y))

    def to_json(self) -> dict:
        return {"x": format_rational(self.x), "y": format_rational(self.y)}

    @classmethod
    def from_json(cls, obj: dict) -> "DPoint":
        return cls(parse_rational(str(obj["x"])), parse_rational(str(obj["y"])))


@dataclass(frozen=True)
class Quadruple:
    """Four rationals (a, b, c, d) meant to form a D(q)-quadruple.

    The square certificates live in :func:`dquad.quadruples.verify_quadruple`;
    this container does not validate on its own.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    q: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "d", "q"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    @property
    def product(self) -> Fraction:
        return self.a * self.b * self.c * self.d

    def __neg__(self) -> "Quadruple":
        return Quadruple(-self.a, -self.b, -self.c, -self.d, self.q)


def on_curve_D(params: Params, x: RationalLike, y: RationalLike) -> bool:
    x, y = as_rational(x), as_rational(y)
    q = params.q
    return (x * x - q) * (y * y - q) == params.m


def on_curve_E(params: Params, P: EPoint) -> bool:
    if not isinstance(P, EPoint):
        return False
    if P.is_infinity:
        return True
    T, W = P.T, P.W
    return W * W == T * T * T + params.a2 * T * T + params.a4 * T


def _check(params: Params, *points: EPoint) -> None:
    for P in points:
        if not on_curve_E(params, P):
            raise PointNotOnCurve(f"{P!r} is not on E_m for {params}")


def _add(params: Params, P: EPoint, Q: EPoint) -> EPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    T1, W1, T2, W2 = P.T, P.W, Q.T, Q.W
    if T1 == T2:
        if W1 + W2 == 0:
            return INFINITY
        lam = (3 * T1 * T1 + 2 * params.a2 * T1 + params.a4) / (2 * W1)
    else:
        lam = (W2 - W1) / (T2 - T1)
    T3 = lam * lam - params.a2 - T1 - T2
    W3 = -(W1 + lam * (T3 - T1))
    return EPoint(T3, W3)


def _neg(P: EPoint) -> EPoint:
    if P.is_infinity:
        return P
    return EPoint(P.T, -P.W)


def _mul(params: Params, n: int, P: EPoint) -> EPoint:
    if n < 0:
        n, P = -n, _neg(P)
    result = INFINITY
    addend = P
    while n:
        if n & 1:
            result = _add(params, result, addend)
        n >>= 1
        if n:
            addend = _add(params, addend, addend)
    return result


def e_add(params: Params, P: EPoint, Q: EPoint) -> EPoint:
    _check(params, P, Q)
    return _add(params, P, Q)


def e_neg(params: Params, P: EPoint) -> EPoint:
    _check(params, P)
    return _neg(P)


def e_sub(params: Params, P: EPoint, Q: EPoint) -> EPoint:
    _check(params, P, Q)
    return _add(params, P, _neg(Q))


def e_scalar_mul(params: Params, n: int, P: EPoint) -> EPoint:
    _check(params, P)
    return _mul(params, n, P)


def e_combination(params: Params, *terms: tuple) -> EPoint:
    """Sum of n_i * P_i over ``(n_i, P_i)`` pairs."""
    total = INFINITY
    for n, P in terms:
        _check(params, P)
        total = _add(params, total, _mul(params, n, P))
    return total


def point_R(params: Params) -> EPoint:
    """The order-4 point (m, 2mq)."""
    return EPoint(params.m, 2 * params.m * params.q)


def point_S(params: Params) -> EPoint:
    """Image of (-x1, y1) under the birational map; generically of infinite order."""
    q, x1, y1 = params.q, params.x1, params.y1
    kx2 = params.kx ** 2
    T = y1 * y1 * kx2 / (x1 * x1)
    W = q * y1 * (x1 * x1 + y1 * y1) * kx2 / x1 ** 3
    return EPoint(T, W)


def special_points(params: Params) -> tuple:
    """The zeros S1, S2 and poles R1, R2 of g, returned as (S1, R1, S2, R2).

    Coordinates live in Q(sqrt q), or in Q when q is a rational square.
    """
    s = sqrt_in_field(params.q)
    x1, y1, kx, ky = params.x1, params.y1, params.kx, params.ky
    S1_T = ky * (x1 - s) ** 2
    S2_T = ky * (x1 + s) ** 2
    R1_T = kx * (y1 + s) ** 2
    R2_T = kx * (y1 - s) ** 2
    S1 = EPoint(S1_T, 2 * y1 * s * S1_T)
    R1 = EPoint(R1_T, 2 * x1 * s * R1_T)
    S2 = EPoint(S2_T, -2 * y1 * s * S2_T)
    R2 = EPoint(R2_T, -2 * x1 * s * R2_T)
    return S1, R1, S2, R2


def order_of_torsion(params: Params, P: EPoint, bound: int = 12) -> Optional[int]:
    """Smallest n <= bound with nP = O, or None."""
    _check(params, P)
    Q = P
    for n in range(1, bound + 1):
        if Q.is_infinity:
            return n
        Q = _add(params, Q, P)
    return None


special_points_prop3 = special_points
