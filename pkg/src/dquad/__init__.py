"""Rational D(q)-quadruples with a prescribed product, via points on an elliptic curve."""
from .curves import INFINITY, DPoint, EPoint, Params, Quadruple, point_R, point_S
from .birational import f_inv, f_map, g_eval, g_square_class
from .quadruples import (
    admissibility_check,
    construct_family_quadruple,
    construct_from_triple,
    m_from_tu,
    quadruple_to_triple,
    verify_quadruple,
)
from .search import brute_force_quadruples, find_remark8_witness, search_D_points

__version__ = "0.1.0"
