"""Exact scalar arithmetic.

Rationals are plain :class:`fractions.Fraction` values. On top of them this
module provides square detection, square classes of Q*/(Q*)^2 and the
quadratic extension Q(sqrt(q)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from sympy import factorint

from .errors import DivisionByZero, MixedFields, NotASquare, ZeroInput

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

# Trial division bound used before falling back to a general factoring routine.
_TRIAL_BOUND = 1 << 16


def _sieve(n: int) -> list:
    flags = bytearray([1]) * n
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n - 1) + 1):
        if flags[p]:
            flags[p * p::p] = bytearray(len(range(p * p, n, p)))
    return [p for p in range(n) if flags[p]]


_SMALL_PRIMES = _sieve(_TRIAL_BOUND)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction. Floats are refused: they are never exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/s"``; decimal notation is rejected."""
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(r: Fraction) -> str:
    return str(Fraction(r))


def height(r: Fraction) -> int:
    """Naive height max(|num|, den) of a rational in lowest terms."""
    r = Fraction(r)
    return max(abs(r.numerator), r.denominator)


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    return isqrt(n) ** 2 == n


def is_square(r: RationalLike) -> bool:
    r = as_rational(r)
    # Fractions are kept reduced, so r is a square iff num and den both are.
    return is_square_int(r.numerator) and is_square_int(r.denominator)


def sqrt_exact(r: RationalLike) -> Fraction:
    r = as_rational(r)
    if not is_square(r):
        raise NotASquare(f"{r} is not the square of a rational")
    return Fraction(isqrt(r.numerator), isqrt(r.denominator))


def same_square_class(r: RationalLike, s: RationalLike) -> bool:
    """True iff r/s is a nonzero rational square. Cheap: needs no factoring."""
    r, s = as_rational(r), as_rational(s)
    if r == 0 or s == 0:
        raise ZeroInput("square classes are defined for nonzero rationals only")
    return is_square(r * s)


def _squarefree_int(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    d = 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e & 1:
                d *= p
    # Large square cofactors are common (g values are square-class-small).
    if n > 1 and not is_square_int(n):
        for p, e in factorint(n).items():
            if e & 1:
                d *= p
    return sign * d


@dataclass(frozen=True)
class SquareClass:
    """Class of a nonzero rational modulo (Q*)^2, stored as a squarefree integer."""

    d: int

    def __post_init__(self):
        if self.d == 0:
            raise ZeroInput("square class representative must be nonzero")

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if not isinstance(other, SquareClass):
            return NotImplemented
        g = gcd(self.d, other.d)
        return SquareClass((self.d // g) * (other.d // g))

    @property
    def is_trivial(self) -> bool:
        return self.d == 1

    def __int__(self) -> int:
        return self.d


def squarefree_part(r: RationalLike) -> SquareClass:
    """Squarefree integer d with r = d * s^2 for a rational s.

    >>> squarefree_part(Fraction(-49, 4))
    SquareClass(d=-1)
    """
    r = as_rational(r)
    if r == 0:
        raise ZeroInput("squarefree part of zero is undefined")
    # n/d and n*d lie in the same class.
    return SquareClass(_squarefree_int(r.numerator * r.denominator))


class QuadExtElem:
    """Element a + b*sqrt(q) of Q(sqrt(q)) for a fixed non-square rational q.

    Mixes freely with ints and Fractions, which are treated as b = 0.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a: RationalLike, b: RationalLike, q: RationalLike):
        q = as_rational(q)
        if is_square(q):
            raise ValueError(f"q = {q} is a rational square; Q(sqrt(q)) = Q")
        object.__setattr__(self, "a", as_rational(a))
        object.__setattr__(self, "b", as_rational(b))
        object.__setattr__(self, "q", q)

    @classmethod
    def _unchecked(cls, a: Fraction, b: Fraction, q: Fraction) -> "QuadExtElem":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "q", q)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadExtElem is immutable")

    def _coerce(self, other) -> "QuadExtElem | None":
        if isinstance(other, QuadExtElem):
            if other.q != self.q:
                raise MixedFields(f"Q(sqrt({self.q})) vs Q(sqrt({other.q}))")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExtElem._unchecked(Fraction(other), Fraction(0), self.q)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElem._unchecked(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem._unchecked(-self.a, -self.b, self.q)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExtElem._unchecked(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        return QuadExtElem._unchecked(a * c + self.q * b * d, a * d + b * c, self.q)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExtElem":
        return QuadExtElem._unchecked(self.a, -self.b, self.q)

    def norm(self) -> Fraction:
        return self.a * self.a - self.q * self.b * self.b

    def inverse(self) -> "QuadExtElem":
        n = self.norm()
        if n == 0:
            raise DivisionByZero("zero has no inverse in Q(sqrt(q))")
        return QuadExtElem._unchecked(self.a / n, -self.b / n, self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExtElem._unchecked(Fraction(1), Fraction(0), self.q)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExtElem):
            return self.q == other.q and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QuadExtElem({self.a}, {self.b}, q={self.q})"

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.q})"


def quadext_arith(x: QuadExtElem, y: QuadExtElem, op: str) -> QuadExtElem:
    """Dispatch ``op`` in {add, sub, mul, div} on two elements of the same field."""
    if isinstance(x, QuadExtElem) and isinstance(y, QuadExtElem) and x.q != y.q:
        raise MixedFields(f"Q(sqrt({x.q})) vs Q(sqrt({y.q}))")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def sqrt_in_field(q: RationalLike):
    """sqrt(q) as a Fraction when q is a rational square, else as a QuadExtElem."""
    q = as_rational(q)
    if is_square(q):
        return sqrt_exact(q)
    return QuadExtElem(0, 1, q)
