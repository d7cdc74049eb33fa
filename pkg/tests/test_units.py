"""Units and cuspidal arithmetic: determinants, root orders, orbits."""

from fractions import Fraction
from math import gcd

import pytest

from hb.fields import get_field
from hb.poly import parse_poly
from hb.units import (character_order, cusp_orbits, cuspidal_order,
                      gcd_sweep, root_order_delta, root_order_theta,
                      sigma_det_check)

F2 = get_field(2)
F3 = get_field(3)


def test_sigma_det_single_prime():
    t = parse_poly(F2, "T")
    rep = sigma_det_check((t,), 2)
    # [TRIVIAL] 1x1 matrix: det = sigma_T(2, T) = 1 (only the divisor 1)
    assert rep.det == 1
    assert rep.magnitude_ok
    assert rep.empirical_sign == 1 and rep.stated_sign == -1


def test_sigma_det_two_primes_magnitude():
    primes = (parse_poly(F2, "T"), parse_poly(F2, "T+1"))
    for s in (1, 2, 3):
        rep = sigma_det_check(primes, s)
        assert rep.magnitude_ok
        assert abs(rep.det) == Fraction(2) ** (2 * s)
        assert rep.sign == -1


def test_sigma_det_three_primes_sign():
    primes = tuple(parse_poly(F3, s) for s in ("T", "T+1", "T+2"))
    rep = sigma_det_check(primes, 1)
    assert rep.magnitude_ok
    assert rep.sign == rep.empirical_sign == 1


def test_sigma_det_rejects_duplicates():
    t = parse_poly(F2, "T")
    with pytest.raises(ValueError):
        sigma_det_check((t, t), 1)


def test_root_order_delta():
    assert root_order_delta(2) == 1
    assert root_order_delta(5) == 4


def test_root_order_theta_gcd_law():
    # [PAPER] max root order (q-1)(q^{gcd(deg n, r)} - 1)
    for q, field in ((2, F2), (3, F3)):
        for s in ("T", "T^2+T+1" if q == 2 else "T^2+1"):
            n = parse_poly(field, s)
            for r in (2, 3, 4):
                rd = root_order_theta(n, r)
                assert rd.max_root == \
                    (q - 1) * (q ** gcd(int(n.deg), r) - 1)
                assert rd.gcd_ok


def test_gcd_sweep_clean():
    assert gcd_sweep(qs=(2, 3), dmax=6, rmax=4) == []


def test_character_order_squarefree():
    n = parse_poly(F3, "T")
    for r in (2, 3):
        assert character_order(n, r) == 2


def test_cusp_orbit_counts():
    # [PAPER] 2^s orbits for squarefree n with s prime factors
    for field, s_str, s in ((F2, "T", 1), (F2, "T^2+T", 2), (F3, "T+1", 1)):
        n = parse_poly(field, s_str)
        for r in (2, 3):
            rep = cusp_orbits(n, r)
            assert rep.orbit_count == 2 ** s
            assert sum(rep.orbit_sizes) == rep.total


def test_cusp_orbits_rejects_square_level():
    with pytest.raises(ValueError):
        cusp_orbits(parse_poly(F2, "T^2"), 2)


def test_cuspidal_orders_anchors():
    # [PAPER] order 3 for q=2, r=3, p=T; order 13 for q=3, r=2, deg p=3
    assert cuspidal_order(parse_poly(F2, "T"), 3).order == 3
    assert cuspidal_order(parse_poly(F3, "T^3+T^2+2"), 2).order == 13


def test_cuspidal_pole_order():
    rep = cuspidal_order(parse_poly(F2, "T"), 3)
    assert rep.theta_pole_order == -(2 ** 2 - 1)


def test_cuspidal_rejects_reducible():
    with pytest.raises(ValueError):
        cuspidal_order(parse_poly(F2, "T^2+T"), 2)
