"""Deterministic generators of curve data shared by the test modules."""
import random
from fractions import Fraction

from dquad.curves import Params
from dquad.errors import InvalidParams
from dquad.exactmath import is_square


def random_rational(rng, bound=9, nonzero=True):
    while True:
        r = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if r or not nonzero:
            return r


def random_params(rng, square_q=None, qs=None):
    """Random valid Params. ``square_q`` forces q to be (or not be) a rational square."""
    while True:
        if qs is not None:
            q = Fraction(rng.choice(qs))
        else:
            q = Fraction(rng.choice([-7, -6, -5, -3, -2, -1, 1, 2, 3, 4, 5, 6, 7, 10, 9, 13]))
        if square_q is True and not is_square(q):
            continue
        if square_q is False and is_square(q):
            continue
        x1 = random_rational(rng)
        y1 = random_rational(rng)
        try:
            return Params.from_base_point(q, x1, y1)
        except InvalidParams:
            continue


def rng(seed=0):
    return random.Random(seed)
