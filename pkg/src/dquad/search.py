"""Bounded-height searches: points on D_m, witnesses with x^2 - q square, brute-force quadruples."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, List, Optional

from .curves import DPoint, Quadruple
from .errors import InvalidParams
from .exactmath import RationalLike, as_rational, height, is_square, sqrt_exact


def default_workers() -> int:
    raw = os.environ.get("DQ_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def rationals_up_to(H: int, lo: int = -10**100, hi: int = 10**100) -> Iterator[Fraction]:
    """Every p/s in lowest terms with max(|p|, s) <= H and lo <= p <= hi."""
    for p in range(max(-H, lo), min(H, hi) + 1):
        for s in range(1, H + 1):
            if gcd(p, s) == 1:
                yield Fraction(p, s)


def _point_key(pt: DPoint) -> tuple:
    x, y = pt.x, pt.y
    return (height(x), abs(x.numerator), x.denominator, x < 0, y < 0, abs(y))


def _scan(q: Fraction, m: Fraction, H: int, lo: int, hi: int) -> List[DPoint]:
    out = []
    for x in rationals_up_to(H, lo, hi):
        dx = x * x - q
        if dx == 0:
            continue
        y2 = q + m / dx
        if not is_square(y2):
            continue
        y = sqrt_exact(y2)
        out.append(DPoint(x, y))
        if y != 0:
            out.append(DPoint(x, -y))
    return out


def _chunks(H: int, n: int) -> List[tuple]:
    total = 2 * H + 1
    step = -(-total // n)
    return [(lo, min(lo + step - 1, H)) for lo in range(-H, H + 1, step)]


def search_D_points(q: RationalLike, m: RationalLike, H: int,
                    workers: Optional[int] = None) -> List[DPoint]:
    """All (x, y) on D_m with height(x) <= H.

    Sorted by height of x, then |numerator|, denominator, positive x before
    negative, positive y before negative. The order does not depend on
    ``workers``.
    """
    q, m = as_rational(q), as_rational(m)
    if q == 0 or m == 0 or m == q * q:
        raise InvalidParams(f"D_m is degenerate for q={q}, m={m}")
    if H < 1:
        raise InvalidParams("height bound must be positive")
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        points = _scan(q, m, H, -H, H)
    else:
        ranges = _chunks(H, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan, *zip(*[(q, m, H, lo, hi) for lo, hi in ranges]))
            points = [pt for part in parts for pt in part]
    return sorted(points, key=_point_key)


def find_remark8_witness(q: RationalLike, m: RationalLike, H: int) -> Optional[DPoint]:
    """First searched point (x0, y0) of D_m with x0^2 - q a square, if any.

    Finding nothing is not a proof that no quadruple with product m exists.
    """
    q = as_rational(q)
    for pt in search_D_points(q, m, H):
        if is_square(pt.x * pt.x - q):
            return pt
    return None


def _candidates(numerator_bound: int, denominator_bound: int, signed: bool) -> List[Fraction]:
    vals = set()
    for s in range(1, denominator_bound + 1):
        for p in range(1, numerator_bound + 1):
            if gcd(p, s) == 1:
                vals.add(Fraction(p, s))
                if signed:
                    vals.add(Fraction(-p, s))
    return sorted(vals)


def brute_force_quadruples(q: RationalLike, numerator_bound: int, denominator_bound: int = 1,
                           signed: bool = False) -> List[Quadruple]:
    """Every D(q)-quadruple with entries p/s, |p| <= numerator_bound, s <= denominator_bound.

    Grows cliques in the graph joining a, b whenever ab + q is a square.
    Entries are positive unless ``signed``.
    """
    q = as_rational(q)
    if numerator_bound < 1 or denominator_bound < 1:
        raise InvalidParams("bounds must be positive")
    vals = _candidates(numerator_bound, denominator_bound, signed)
    qn, qd = q.numerator, q.denominator
    nums = [v.numerator for v in vals]
    dens = [v.denominator for v in vals]
    n = len(vals)
    adj: List[set] = [set() for _ in range(n)]
    for i in range(n):
        pi, si = nums[i], dens[i]
        for j in range(i + 1, n):
            # ab + q = (pi pj qd + qn si sj) / (si sj qd)
            den = si * dens[j] * qd
            num = pi * nums[j] * qd + qn * si * dens[j]
            prod = num * den
            if prod >= 0 and isqrt(prod) ** 2 == prod:
                adj[i].add(j)
                adj[j].add(i)
    found = []
    for i in range(n):
        up_i = {j for j in adj[i] if j > i}
        for j in sorted(up_i):
            common_ij = up_i & adj[j]
            for k in sorted(c for c in common_ij if c > j):
                for l in sorted(c for c in common_ij & adj[k] if c > k):
                    found.append(Quadruple(vals[i], vals[j], vals[k], vals[l], q))
    return found
