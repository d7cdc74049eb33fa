"""Closed-form coefficients and values of the discriminant cochains."""

from fractions import Fraction

from hb.building import flip_matrix, mat_from_exps, mat_mul
from hb.discriminant import (eval_on_mirabolic, p_delta_coefficient,
                             p_delta_eval, p_theta_coefficient, series_eval,
                             theta_evaluator, weyl_edge_value)
from hb.fields import get_field
from hb.fourier import PPoint
from hb.poly import Poly, RatF, parse_poly

F2 = get_field(2)
F3 = get_field(3)


def test_identity_edge_value():
    # [PAPER] P1(Delta_r) at the standard edge is -(q-1)
    for q, field in ((2, F2), (3, F3)):
        for r in (2, 3, 4):
            assert p_delta_eval((1,) * (r - 1), r, field) == -(q - 1)


def test_weyl_chamber_formula():
    # [PAPER] -(q-1) q^{(r-1)(k_1+1) - (k_2+..+k_r)}
    assert weyl_edge_value(2, (0, 0)) == -2
    assert weyl_edge_value(2, (3, 0)) == -16
    assert weyl_edge_value(3, (2, 1, 0)) == -2 * 3 ** 5
    assert weyl_edge_value(2, (2, 1, 1, 0)) == -(2 ** 7)


def test_weyl_matches_series():
    for q, field in ((2, F2), (3, F3)):
        for kt in ((0, 0), (1, 0), (2, 0), (2, 1, 0), (3, 2, 0)):
            r = len(kt)
            yexps = tuple(k - kt[0] for k in kt[1:])
            x0 = (RatF.zero(field),) * (r - 1)
            assert series_eval(x0, yexps, r, field) == weyl_edge_value(q, kt)


def test_delta_coefficients_frozen():
    one = Poly.one(F2)
    t = parse_poly(F2, "T")
    zero = Poly.zero(F2)
    # [PAPER] anchor coefficients of P1(Delta_2) at q = 2
    assert p_delta_coefficient((one,), (2,), 2) == Fraction(3, 2)
    assert p_delta_coefficient((zero,), (2,), 2) == Fraction(-1, 2)
    # [DERIVED] a = T, y = T^3: C (q^{m-1} - 1) |det y|^{-1} sigma(1, T)
    got = p_delta_coefficient((t,), (3,), 2)
    C = Fraction((4 - 1) * (4 - 2), 2 - 1)
    assert got == C * (2 - 1) * Fraction(1, 8) * 3 == Fraction(9, 4)


def test_coefficient_vanishes_for_small_m():
    t2 = parse_poly(F2, "T^2")
    assert p_delta_coefficient((t2,), (2,), 2) == 0


def test_theta_coefficient_subtracts_level():
    t = parse_poly(F2, "T")
    one = Poly.one(F2)
    # level-T coefficient at a = 1 equals the Delta coefficient (T
    # cannot divide a unit divisor)
    assert p_theta_coefficient(t, (one,), (2,), 2) \
        == p_delta_coefficient((one,), (2,), 2)


def test_series_at_nonzero_x_is_rational():
    x = RatF.pi_power(F2, 1)
    v = series_eval((x,), (2,), 2, F2)
    # [DERIVED] frozen: P1(Delta_2)(pi, T^2-lattice) = -2
    assert v == -2


def test_eval_on_mirabolic_agrees_with_series():
    x = RatF.pi_power(F3, 1)
    g = PPoint((x,), (2,)).matrix(F3)
    assert eval_on_mirabolic(g, 2, F3) == series_eval((x,), (2,), 2, F3)


def test_theta_evaluator_handles_flipped_cell():
    n = parse_poly(F2, "T")
    h1 = theta_evaluator(n, F2, 2)
    g = flip_matrix(F2, 2)
    v1 = h1(g)
    v2 = h1(g)   # memoized path returns the same value
    assert v1 == v2
    assert isinstance(v1, Fraction) or isinstance(v1, int)


def test_theta_evaluator_deeper_vertex():
    n = parse_poly(F2, "T")
    h1 = theta_evaluator(n, F2, 2)
    g = mat_mul(mat_from_exps(F2, (1, 0)), flip_matrix(F2, 2))
    assert h1(g) == h1(g)
