"""Cyclotomic rationals, the additive character, and divisor sums."""

from fractions import Fraction

import pytest

from hb.algebra import CycRat, PoleError, psi0, sigma, sigma_restricted
from hb.fields import get_field
from hb.poly import Poly, parse_poly

F2 = get_field(2)
F3 = get_field(3)


def test_psi0_character_sum_vanishes():
    # [TRIVIAL] sum over F_p of psi_0 is zero for p = 2, 3, 5
    for p in (2, 3, 5):
        total = CycRat.zero(p, p)
        for x in range(p):
            total = total + psi0(p, x)
        assert total.is_zero()


def test_psi0_is_multiplicative_in_the_exponent():
    for p in (3, 5):
        for a in range(p):
            for b in range(p):
                assert psi0(p, a) * psi0(p, b) == psi0(p, a + b)


def test_cycrat_denominator_normalization():
    x = CycRat.from_rational(2, 2, Fraction(6, 4))
    assert x.den == 2 and x.num == (3,)
    with pytest.raises(ValueError):
        CycRat.from_rational(2, 2, Fraction(1, 3))


def test_cycrat_equality_across_denominators():
    # regression: values equal as rationals must compare equal even
    # when stored over different q-power denominators
    a = CycRat(3, 3, (3, 6), 3)
    b = CycRat(3, 3, (9, 18), 9)
    assert a == b
    assert CycRat.from_rational(2, 2, Fraction(1, 2)) != \
        CycRat.from_rational(2, 2, Fraction(1, 4))


def test_cycrat_zeta_relation():
    # 1 + zeta + zeta^2 = 0 for p = 3
    p = 3
    total = psi0(p, 0) + psi0(p, 1) + psi0(p, 2)
    assert total.is_zero()
    assert (psi0(p, 1) * psi0(p, 2)).rational() == 1


def test_sigma_values():
    t = parse_poly(F2, "T")
    # [TRIVIAL] sigma(s, T) = 1 + 2^s
    assert sigma(1, (t,)) == 3
    assert sigma(2, (t,)) == 5
    # [DERIVED] sigma(1, T^2+T) = 1 + 2 + 2 + 4 = 9 over F_2
    assert sigma(1, (parse_poly(F2, "T^2+T"),)) == 9
    assert sigma(0, (Poly.one(F2),)) == 1


def test_sigma_at_zero_vector():
    z = (Poly.zero(F2),)
    assert sigma(1, z) == Fraction(1, 1 - 4)
    with pytest.raises(PoleError):
        sigma(-1, z)


def test_sigma_restricted_drops_multiples():
    t = parse_poly(F2, "T")
    a = parse_poly(F2, "T^2+T")
    # divisors of T^2+T: 1, T, T+1, T^2+T; those not divisible by T
    # contribute 1 + 2^s
    assert sigma_restricted(t, 1, (a,)) == 3
    assert sigma_restricted(t, 1, (parse_poly(F2, "T+1"),)) == 3


def test_sigma_restricted_at_zero():
    t = parse_poly(F3, "T")
    z = (Poly.zero(F3),)
    assert sigma_restricted(t, 1, z) == (1 - 3) * sigma(1, z)
