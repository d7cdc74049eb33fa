"""Lattice-sum oracle: truncated exponential lattices and valuations.

The frozen values here are [DERIVED]: produced by this oracle and
independently matched against the closed-form Fourier series (see the
acceptance cross-check); they are stored so regressions surface as
plain equality failures.
"""

import pytest

from hb.building import mat_from_exps
from hb.fields import embedding, get_field
from hb.laurent import Laurent
from hb.oracle import (act, base_points, drinfeld_coeffs, exp_coefficients,
                       extension_field, p_delta_direct, p_delta_on_p_point,
                       p_theta_direct)
from hb.poly import RatF, parse_poly

F2 = get_field(2)


def test_base_points_are_units():
    z = base_points(2, 2)
    assert len(z) == 2
    assert z[1].ord() == 0


def test_exp_coefficients_are_normalized():
    big = extension_field(2, 2)
    embed = embedding(2, big.q)
    z = act(mat_from_exps(F2, (0, 0)), base_points(2, 2), big, embed, 80)
    a = exp_coefficients(z, 3, 3, prec=80)
    assert a[0] == Laurent.one(big)
    assert len(a) == 4


def test_exp_coefficients_rejects_huge_lattice():
    big = extension_field(2, 2)
    embed = embedding(2, big.q)
    z = act(mat_from_exps(F2, (0, 0)), base_points(2, 2), big, embed, 80)
    with pytest.raises(ValueError):
        exp_coefficients(z, 50, 2)


def test_drinfeld_coeffs_shape():
    big = extension_field(2, 2)
    embed = embedding(2, big.q)
    z = act(mat_from_exps(F2, (0, 0)), base_points(2, 2), big, embed, 120)
    dc = drinfeld_coeffs(z, 4, 2, prec=80)
    assert len(dc.g) == 2
    assert dc.g[1].ord() is not None


def test_delta_valuation_doubles_along_apartment():
    # [DERIVED] P1(Delta_2)(diag(T^k, 1)) = -(q-1) q^{k+1} at q = 2
    for k, want in ((0, -2), (1, -4), (2, -8)):
        assert p_delta_direct(mat_from_exps(F2, (k, 0)), 2, 2, D=5) == want


def test_p_point_values():
    # [DERIVED] cross-checked against the closed-form series
    zero = RatF.zero(F2)
    assert p_delta_on_p_point((zero,), (3,), 2, 2, D=5) == 5
    assert p_delta_on_p_point((zero,), (-1,), 2, 2, D=5) == -4
    pi = RatF.pi_power(F2, 1)
    assert p_delta_on_p_point((pi,), (2,), 2, 2, D=5) == -2


def test_theta_values():
    t = parse_poly(F2, "T")
    assert p_theta_direct(t, mat_from_exps(F2, (0, 0)), 2, 2, D=5) == 2
    assert p_theta_direct(t, mat_from_exps(F2, (1, 0)), 2, 2, D=5) == 4


def test_rank_guard():
    with pytest.raises(ValueError):
        p_delta_direct(mat_from_exps(F2, (0, 0, 0, 0)), 2, 4)
