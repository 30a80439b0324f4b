from fractions import Fraction

import pytest

from dquad.birational import f_map, g_eval
from dquad.curves import INFINITY, Params, Quadruple, e_add, e_combination, e_scalar_mul, e_sub, point_R, point_S
from dquad.errors import (
    DegenerateTriple,
    InvalidParams,
    ProductMismatch,
    SquareConditionFails,
)
from dquad.exactmath import is_square
from dquad.quadruples import (
    admissibility_check,
    construct_family_quadruple,
    construct_from_triple,
    converse_condition,
    family_triple,
    is_nondegenerate,
    m_from_tu,
    orbit,
    params_from_tu,
    quadruple_from_witness,
    quadruple_to_triple,
    standard_candidates,
    verify_quadruple,
)
from dquad.search import search_D_points

from family_oracle import printed_family
from helpers import random_params, rng

FERMAT = (1, 3, 8, 120)
DIOPHANTUS = (Fraction(1, 16), Fraction(33, 16), Fraction(17, 4), Fraction(105, 16))
P_1012 = Params.from_base_point(3, 5, 7)


def test_verify_fixtures():
    cert = verify_quadruple(1, *FERMAT)
    assert cert.passed
    assert cert.roots == (2, 3, 11, 5, 19, 31)
    assert verify_quadruple(1, *DIOPHANTUS).passed
    bad = verify_quadruple(1, 1, 2, 3, 4)
    assert not bad.passed
    assert bad.roots[0] is None
    assert not verify_quadruple(1, 1, 3, 3, 8).passed
    assert not verify_quadruple(1, 0, 3, 8, 120).passed


def test_certificate_json():
    js = verify_quadruple(1, *DIOPHANTUS).to_json()
    assert js["pass"] is True
    assert js["a"] == "1/16"
    assert js["roots"] == ["17/16", "9/8", "19/16", "25/8", "61/16", "43/8"]


@pytest.mark.parametrize("q, t, u, m, x1", [
    (3, 4, 1, 13, 2),
    (-3, 2, -1, 28, 1),
    (1, 2, 3, Fraction(16, 3), Fraction(5, 3)),
    (-3, 2, 1, 28, -1),
])
def test_m_from_tu(q, t, u, m, x1):
    got_m, got_x1, got_y1 = m_from_tu(q, t, u)
    assert (got_m, got_x1, got_y1) == (m, x1, t)
    assert is_square(got_x1 ** 2 - q)


@pytest.mark.parametrize("q, t, u", [(3, 4, 0), (4, 2, 1), (1, 1, 3), (-1, 0, 2), (0, 2, 1)])
def test_m_from_tu_invalid(q, t, u):
    with pytest.raises(InvalidParams):
        m_from_tu(q, t, u)


def test_orbit_examples():
    p = P_1012
    R, S = point_R(p), point_S(p)
    O_orbit = orbit(p, INFINITY)
    assert len(O_orbit) == 8
    assert O_orbit == {e_scalar_mul(p, k, R) for k in range(4)} | {e_add(p, S, e_scalar_mul(p, k, R)) for k in range(4)}
    assert len(orbit(p, S)) == 8
    for P in (S, e_scalar_mul(p, 3, S), f_map(p, (7, 5))):
        assert orbit(p, P) == orbit(p, e_add(p, P, R))
        assert orbit(p, P) == orbit(p, e_sub(p, S, P))


def test_orbit_sizes_divide_eight():
    r = rng(20)
    for _ in range(10):
        p = random_params(r)
        R, S = point_R(p), point_S(p)
        for i in range(-2, 3):
            P = e_scalar_mul(p, i, S)
            assert 8 % len(orbit(p, P)) == 0


def test_nondegeneracy_examples():
    p = P_1012
    R, S = point_R(p), point_S(p)
    assert not is_nondegenerate(p, (INFINITY, R, e_scalar_mul(p, 2, R)))
    assert is_nondegenerate(p, family_triple(p))
    Q = f_map(p, (7, 5))
    P = e_scalar_mul(p, 2, S)
    assert not is_nondegenerate(p, (P, e_sub(p, S, P), Q))


def test_family_matches_printed_formulas():
    for t in (2, 3, 5, 7, Fraction(1, 2), Fraction(-3, 4)):
        quad = construct_family_quadruple(-3, t, -1)
        assert quad.entries == printed_family(t)
        assert quad.product == 4 * (Fraction(t) ** 2 + 3)


def test_family_t1_degenerate():
    a, b, _, _ = printed_family(1)
    assert a == b == 2
    with pytest.raises(DegenerateTriple):
        construct_family_quadruple(-3, 1, -1)


def test_family_example_q3():
    quad = construct_family_quadruple(3, 4, 1)
    assert quad.product == 13
    assert verify_quadruple(3, *quad.entries).passed


def test_sign_symmetry():
    p = params_from_tu(3, 4, 1)
    plus = construct_from_triple(p, family_triple(p), 1)
    minus = construct_from_triple(p, family_triple(p), -1)
    assert minus == -plus
    assert verify_quadruple(3, *minus.entries).passed


def test_square_condition_enforced():
    # m = 1012 admits no quadruple per the negative example; any nondegenerate
    # triple must fail the square condition (m is not a square class of g here).
    p = P_1012
    S = point_S(p)
    R = point_R(p)
    with pytest.raises(SquareConditionFails):
        construct_from_triple(p, (e_add(p, S, R), e_scalar_mul(p, 2, S), e_scalar_mul(p, 3, S)))


def test_construction_soundness_sweep():
    """Every non-degenerate triple of small combinations passing the square test builds a quadruple."""
    r = rng(21)
    built = 0
    for _ in range(6):
        q = r.choice([-3, -2, 2, 3, 5])
        p = params_from_tu(q, r.choice([2, 3, Fraction(1, 2), 5]), r.choice([1, 3, Fraction(1, 3)]))
        R, S = point_R(p), point_S(p)
        pts = [e_combination(p, (i, S), (j, R)) for i in range(1, 5) for j in range(4)]
        for k in range(25):
            triple = (r.choice(pts), r.choice(pts), r.choice(pts))
            if not is_nondegenerate(p, triple):
                with pytest.raises(DegenerateTriple):
                    construct_from_triple(p, triple)
                continue
            if not converse_condition(p, triple):
                with pytest.raises(SquareConditionFails):
                    construct_from_triple(p, triple)
                continue
            try:
                quad = construct_from_triple(p, triple)
            except DegenerateTriple:
                continue
            assert verify_quadruple(p.q, *quad.entries).passed
            assert quad.product == p.m
            built += 1
    assert built > 10


def test_quadruple_to_triple_fermat():
    p = Params.from_base_point(1, 2, 31)
    triple = quadruple_to_triple(p, Quadruple(*FERMAT, 1))
    assert triple.Q1 == INFINITY
    assert converse_condition(p, triple)


def test_quadruple_to_triple_diophantus():
    m = Fraction(1, 16) * Fraction(33, 16) * Fraction(17, 4) * Fraction(105, 16)
    base = next(pt for pt in search_D_points(1, m, 20) if pt.x and pt.y)
    p = Params(1, m, base.x, base.y)
    triple = quadruple_to_triple(p, Quadruple(*DIOPHANTUS, 1))
    assert converse_condition(p, triple)
    # t12 = 17/16, t34 = 43/8 is also a base point
    p2 = Params(1, m, Fraction(17, 16), Fraction(43, 8))
    assert quadruple_to_triple(p2, Quadruple(*DIOPHANTUS, 1)).Q1 == INFINITY


def test_quadruple_to_triple_product_mismatch():
    p = Params.from_base_point(1, 2, 31)
    with pytest.raises(ProductMismatch):
        quadruple_to_triple(p, Quadruple(*DIOPHANTUS, 1))


def test_round_trip_triple_quadruple():
    for q, t, u in [(3, 4, 1), (-3, 2, -1), (2, 3, 1), (5, Fraction(1, 2), 2)]:
        p = params_from_tu(q, t, u)
        quad = construct_from_triple(p, family_triple(p))
        back = quadruple_to_triple(p, quad)
        assert converse_condition(p, back)
        for Q, Q_back in zip(family_triple(p), back):
            assert g_eval(p, Q) == g_eval(p, Q_back)
        assert construct_from_triple(p, back) in (quad, -quad)


def test_admissibility_examples():
    p = params_from_tu(3, 4, 1)
    v = admissibility_check(p, [point_R(p)])
    assert v.exists and v.witness == point_R(p)
    empty = admissibility_check(p, [])
    assert not empty.exists and empty.coset_reps_checked == 0 and empty.partial
    cands = standard_candidates(P_1012) + [f_map(P_1012, pt) for pt in search_D_points(3, 1012, 50)]
    v = admissibility_check(P_1012, cands)
    assert not v.exists
    assert v.partial
    assert v.to_json()["status"] == "NoneAmongSupplied"


def test_admissibility_pole_shift():
    r = rng(22)
    p = random_params(r, square_q=True)
    from dquad.curves import special_points
    S1, R1, S2, R2 = special_points(p)
    S = point_S(p)
    v = admissibility_check(p, [R1], auxiliary=[S])
    assert v.coset_reps_checked == 1 and not v.unresolved
    v = admissibility_check(p, [R1])
    assert v.unresolved == [R1]
    assert v.warnings


def test_quadruple_from_witness():
    p = params_from_tu(-3, 2, -1)
    quad = quadruple_from_witness(p, point_R(p))
    assert quad.entries == printed_family(2)
