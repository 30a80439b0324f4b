"""D(q)-quadruples from triples of points on E_m, and back.

A triple (Q1, Q2, Q3) whose orbits under the group generated by P -> P + R
and P -> S - P are pairwise disjoint gives a quadruple as soon as
(y1^2 - q) * g(Q1 + Q2 + Q3) is a square; the entries are

    a = +-sqrt(g(Q1) g(Q2) g(Q3) / ((x1^2 - q)^3 m)),  b = g(Q1) / (a (x1^2 - q)), ...
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence

from .birational import f_map, g_eval
from .curves import (
    INFINITY,
    DPoint,
    EPoint,
    Params,
    Quadruple,
    _add,
    _check,
    _mul,
    _neg,
    on_curve_D,
    point_R,
    point_S,
)
from .errors import (
    DegenerateQuadruple,
    DegenerateTriple,
    DQError,
    InvalidParams,
    MapUndefined,
    PoleOfG,
    ProductMismatch,
    SquareConditionFails,
)
from .exactmath import (
    RationalLike,
    as_rational,
    format_rational,
    is_square,
    sqrt_exact,
)

__all__ = [
    "Quadruple",
    "Triple",
    "Certificate",
    "AdmissibilityVerdict",
    "orbit",
    "is_nondegenerate",
    "construct_from_triple",
    "verify_quadruple",
    "quadruple_to_triple",
    "m_from_tu",
    "params_from_tu",
    "construct_family_quadruple",
    "admissibility_check",
    "quadruple_from_witness",
]


@dataclass(frozen=True)
class Triple:
    Q1: EPoint
    Q2: EPoint
    Q3: EPoint

    def __iter__(self):
        return iter((self.Q1, self.Q2, self.Q3))


_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class Certificate:
    """Outcome of checking four rationals against the D(q) conditions.

    ``roots`` holds the nonnegative square roots of ab+q, ac+q, ad+q, bc+q,
    bd+q, cd+q in that order, or None where the value is not a square.
    """

    q: Fraction
    entries: tuple
    roots: tuple
    passed: bool
    reasons: tuple = ()

    def to_json(self) -> dict:
        a, b, c, d = self.entries
        return {
            "q": format_rational(self.q),
            "a": format_rational(a),
            "b": format_rational(b),
            "c": format_rational(c),
            "d": format_rational(d),
            "roots": [None if r is None else format_rational(r) for r in self.roots],
            "pass": self.passed,
            "reasons": list(self.reasons),
        }


def verify_quadruple(q: RationalLike, a, b, c, d) -> Certificate:
    q = as_rational(q)
    entries = tuple(as_rational(v) for v in (a, b, c, d))
    reasons = []
    if any(v == 0 for v in entries):
        reasons.append("zero entry")
    if len(set(entries)) < 4:
        reasons.append("entries not pairwise distinct")
    roots = []
    for i, j in _PAIRS:
        value = entries[i] * entries[j] + q
        if is_square(value):
            roots.append(sqrt_exact(value))
        else:
            roots.append(None)
            reasons.append(f"{'abcd'[i]}{'abcd'[j]}+q = {value} is not a square")
    return Certificate(q, entries, tuple(roots), not reasons, tuple(reasons))


def orbit(params: Params, P: EPoint) -> frozenset:
    """Orbit of P under translations by R and the reflection P -> S - P."""
    _check(params, P)
    R = point_R(params)
    S = point_S(params)
    out = set()
    A = P
    B = _add(params, S, _neg(P))
    for _ in range(4):
        out.add(A)
        out.add(B)
        A = _add(params, A, R)
        B = _add(params, B, R)
    return frozenset(out)


def is_nondegenerate(params: Params, triple) -> bool:
    orbits = [orbit(params, Q) for Q in triple]
    return all(not (orbits[i] & orbits[j]) for i, j in ((0, 1), (0, 2), (1, 2)))


def construct_from_triple(params: Params, triple, sign: int = 1) -> Quadruple:
    """The quadruple attached to a non-degenerate triple; ``sign`` picks +-a."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    triple = Triple(*triple)
    if not is_nondegenerate(params, triple):
        raise DegenerateTriple("orbits of the triple are not pairwise disjoint")
    Q1, Q2, Q3 = triple
    total = _add(params, _add(params, Q1, Q2), Q3)
    if not is_square(params.ky * g_eval(params, total)):
        raise SquareConditionFails("(y1^2 - q) * g(Q1 + Q2 + Q3) is not a rational square")
    kx = params.kx
    g1, g2, g3 = (g_eval(params, Q) for Q in triple)
    a_sq = g1 * g2 * g3 / (kx ** 3 * params.m)
    # a_sq is a square by the class computation; sqrt_exact re-checks it.
    a = sign * sqrt_exact(a_sq)
    if a == 0:
        raise DegenerateQuadruple("a triple member is a zero of g")
    quad = Quadruple(a, g1 / (a * kx), g2 / (a * kx), g3 / (a * kx), params.q)
    cert = verify_quadruple(params.q, *quad.entries)
    if not cert.passed:
        raise DegenerateQuadruple("; ".join(cert.reasons))
    assert quad.product == params.m
    return quad


def quadruple_to_triple(params: Params, quad: Quadruple) -> Triple:
    """Images under f of (t12, t34), (t13, t24), (t14, t23), all roots taken >= 0."""
    if quad.product != params.m:
        raise ProductMismatch(f"abcd = {quad.product} but m = {params.m}")
    if quad.q != params.q:
        raise ProductMismatch(f"quadruple has q = {quad.q}, params have q = {params.q}")
    cert = verify_quadruple(quad.q, *quad.entries)
    if not cert.passed:
        raise MapUndefined("not a D(q)-quadruple: " + "; ".join(cert.reasons))
    t12, t13, t14, t23, t24, t34 = cert.roots
    points = []
    for x, y in ((t12, t34), (t13, t24), (t14, t23)):
        if not on_curve_D(params, x, y):
            raise MapUndefined(f"({x}, {y}) is not on D_m")
        points.append(f_map(params, DPoint(x, y)))
    return Triple(*points)


def converse_condition(params: Params, triple) -> bool:
    Q1, Q2, Q3 = triple
    total = _add(params, _add(params, Q1, Q2), Q3)
    return is_square(params.ky * g_eval(params, total))


def m_from_tu(q: RationalLike, t: RationalLike, u: RationalLike) -> tuple:
    """(m, x1, y1) with m = (t^2 - q)((u^2 - q) / 2u)^2, x1 = (q + u^2) / 2u, y1 = t."""
    q, t, u = as_rational(q), as_rational(t), as_rational(u)
    if q == 0:
        raise InvalidParams("q must be nonzero")
    if u == 0:
        raise InvalidParams("u must be nonzero")
    x1 = (q + u * u) / (2 * u)
    y1 = t
    m = (t * t - q) * ((u * u - q) / (2 * u)) ** 2
    if m == 0 or m == q * q:
        raise InvalidParams(f"(t, u) = ({t}, {u}) gives excluded m = {m}")
    if x1 == 0 or y1 == 0:
        raise InvalidParams(f"(t, u) = ({t}, {u}) gives a base point on an axis")
    return m, x1, y1


def params_from_tu(q: RationalLike, t: RationalLike, u: RationalLike) -> Params:
    m, x1, y1 = m_from_tu(q, t, u)
    return Params(as_rational(q), m, x1, y1)


def family_triple(params: Params) -> Triple:
    R = point_R(params)
    S = point_S(params)
    return Triple(_add(params, S, R), _mul(params, 2, S), _mul(params, 3, S))


def construct_family_quadruple(q: RationalLike, t: RationalLike, u: RationalLike,
                               sign: int = 1) -> Quadruple:
    params = params_from_tu(q, t, u)
    return construct_from_triple(params, family_triple(params), sign)


@dataclass
class AdmissibilityVerdict:
    """Result of scanning candidate coset representatives of E_m(Q)/2E_m(Q).

    ``exists`` is conclusive; its negation is conclusive only when the
    supplied representatives cover every coset, which is recorded, not checked.
    """

    exists: bool
    witness: Optional[EPoint]
    coset_reps_checked: int
    complete: bool = False
    unresolved: List[EPoint] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "Exists" if self.exists else "NoneAmongSupplied"

    @property
    def partial(self) -> bool:
        return not self.exists and not (self.complete and not self.unresolved)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": None if self.witness is None else self.witness.to_json(),
            "coset_reps_checked": self.coset_reps_checked,
            "partial": self.partial,
            "disclaimer": "nonexistence is proven only if the representatives cover all of E_m(Q)/2E_m(Q)",
            "unresolved": [P.to_json() for P in self.unresolved],
            "warnings": list(self.warnings),
        }


def admissibility_check(params: Params, coset_reps: Iterable[EPoint],
                        auxiliary: Sequence[EPoint] = (),
                        complete: bool = False) -> AdmissibilityVerdict:
    """Look for a representative T with (y1^2 - q) * g(T) a square.

    A representative sitting on a pole of g is replaced by T + 2X for the
    first auxiliary X that avoids the pole; this stays in the same coset.
    """
    checked = 0
    unresolved = []
    warnings = []
    for T in coset_reps:
        _check(params, T)
        checked += 1
        candidates = [T] + [_add(params, T, _mul(params, 2, X)) for X in auxiliary]
        value = None
        for C in candidates:
            try:
                value = g_eval(params, C)
            except PoleOfG:
                continue
            break
        if value is None:
            warnings.append(f"pole of g at {T!r}; no auxiliary shift available")
            unresolved.append(T)
            continue
        if value != 0 and is_square(params.ky * value):
            return AdmissibilityVerdict(True, T, checked, complete, unresolved, warnings)
    return AdmissibilityVerdict(False, None, checked, complete, unresolved, warnings)


def standard_candidates(params: Params) -> List[EPoint]:
    """i*S + j*R for i in {0, 1}, j in {0, .., 3}."""
    R = point_R(params)
    S = point_S(params)
    out = []
    for i in (0, 1):
        for j in range(4):
            out.append(_add(params, _mul(params, i, S), _mul(params, j, R)))
    return out


def quadruple_from_witness(params: Params, witness: EPoint, sign: int = 1,
                           extra_points: Sequence[EPoint] = ()) -> Quadruple:
    """Build a quadruple from a coset witness T.

    Tries triples (T - A - B + 2C, A, B) with A, B, C drawn from small
    multiples of S (and any extra points); the sum stays in T's coset.
    """
    S = point_S(params)
    pool = [_mul(params, k, S) for k in range(1, 5)]
    pool += list(extra_points)
    last_error: Optional[Exception] = None
    # (T + S, 2S, 3S) first: for T = R this is the triple of the (t, u) family.
    try:
        return construct_from_triple(params, (_add(params, witness, S), pool[1], pool[2]), sign)
    except DQError as exc:
        last_error = exc
    for A, B in combinations(pool, 2):
        for C in [INFINITY] + pool:
            Q1 = _add(params, witness, _neg(_add(params, A, B)))
            Q1 = _add(params, Q1, _mul(params, 2, C))
            try:
                return construct_from_triple(params, (Q1, A, B), sign)
            except DQError as exc:
                last_error = exc
    raise DegenerateTriple(f"no usable triple found around witness {witness!r}: {last_error}")
