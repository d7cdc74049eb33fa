"""Fourier expansions on the mirabolic coset space.

A function h on Gamma_inf \\ P(F_inf) / P(O_inf) is encoded by its
values h(x, y) at x a vector of r-1 exact Laurent values and y a
diagonal matrix diag(T^{n_1}, ..., T^{n_{r-1}}), written here as the
exponent tuple.  Coefficients are cyclotomic rationals

    h*(a, y) = q^{(1-M)(r-1)} sum_{u in (pi O/pi^M O)^{r-1}} h(u,y) psi(-a.u)

with the u-grid depth M large enough both for the y-level (max n_i) and
for the character a (max deg a_i + 2), so that out-of-support
coefficients genuinely vanish instead of aliasing.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import CycRat
from .building import (mat_inv, ratf_from_pairs, reduce_y_transcript, vec_mat)
from .laurent import psi_ratf
from .poly import Poly, RatF


@dataclass(frozen=True)
class PPoint:
    """The mirabolic point [[1, x y], [0, y]]."""
    x: tuple    # r-1 RatF values
    yexps: tuple

    def matrix(self, field):
        r = len(self.x) + 1
        rows = [[RatF.one(field)]
                + [self.x[j] * RatF.pi_power(field, -self.yexps[j])
                   for j in range(r - 1)]]
        for i in range(r - 1):
            rows.append([RatF.zero(field)] * (1 + i)
                        + [RatF.pi_power(field, -self.yexps[i])]
                        + [RatF.zero(field)] * (r - 2 - i))
        return tuple(tuple(row) for row in rows)


def poly_key(avec):
    return tuple(a.coeffs for a in avec)


def polys_up_to(field, d):
    """All polynomials of degree <= d (just 0 when d < 0)."""
    if d < 0:
        return [Poly.zero(field)]
    return [Poly(field, cs) for cs in
            itertools.product(range(field.q), repeat=d + 1)]


def table_support(field, yexps):
    """All a-vectors with deg a_i <= n_i - 2."""
    axes = [polys_up_to(field, n - 2) for n in yexps]
    return [tuple(a) for a in itertools.product(*axes)]


@dataclass
class FourierTable:
    field: object
    yexps: tuple
    entries: dict  # poly_key(a) -> CycRat

    def get(self, avec):
        k = poly_key(avec)
        if k not in self.entries:
            raise KeyError(f"coefficient missing for a = {[str(a) for a in avec]}")
        return self.entries[k]


def mval(avec, y):
    """Largest m with a (y^t)^{-1} in (pi^m O)^{r-1}; +inf iff a = 0.
    y is a diagonal exponent tuple or an exact RatF matrix."""
    if all(a.is_zero() for a in avec):
        return float("inf")
    if isinstance(y, tuple) and isinstance(y[0], int):
        return min(n - int(a.deg) for n, a in zip(y, avec) if not a.is_zero())
    field = avec[0].field
    yt = tuple(tuple(y[j][i] for j in range(len(y))) for i in range(len(y)))
    row = vec_mat(tuple(RatF(a) for a in avec), mat_inv(yt))
    return min(int(x.ord_inf()) for x in row if not x.is_zero())


def _grid_depth(avec, yexps):
    m = max(max(yexps), 1)
    degs = [int(a.deg) for a in avec if not a.is_zero()]
    if degs:
        m = max(m, max(degs) + 2)
    return m


def u_grid(field, m, count):
    """Representatives of (pi O / pi^m O)^count: u_i = sum_{k=1}^{m-1} c_k pi^k."""
    digits = list(itertools.product(range(field.q), repeat=max(m - 1, 0)))
    singles = [ratf_from_pairs(field, [(k + 1, c) for k, c in enumerate(d) if c])
               for d in digits]
    return itertools.product(singles, repeat=count)


def dot(avec, xvec):
    field = xvec[0].field
    acc = RatF.zero(field)
    for a, x in zip(avec, xvec):
        acc = acc + RatF(a) * x
    return acc


def _as_cyc(v, p, q):
    return v if isinstance(v, CycRat) else CycRat.from_rational(p, q, v)


def fourier_coefficient(h, avec, yexps, field):
    """h*(a, y) for diagonal y = diag(T^{n_i})."""
    q, p = field.q, field.p
    rm1 = len(yexps)
    M = _grid_depth(avec, yexps)
    neg_a = tuple(-a for a in avec)
    total = CycRat.zero(p, q)
    for u in u_grid(field, M, rm1):
        val = _as_cyc(h(u, yexps), p, q)
        total = total + val * psi_ratf(dot(neg_a, u))
    return total * Fraction(1, q ** ((M - 1) * rm1))


def build_table(h, yexps, field):
    entries = {}
    for avec in table_support(field, yexps):
        entries[poly_key(avec)] = fourier_coefficient(h, avec, yexps, field)
    return FourierTable(field, yexps, entries)


def expand(tbl, xvec):
    """h(x, y) = sum over the support of h*(a,y) psi(a.x)."""
    field = tbl.field
    support = table_support(field, tbl.yexps)
    missing = [a for a in support if poly_key(a) not in tbl.entries]
    if missing:
        raise KeyError("table incomplete; missing "
                       + ", ".join(str([str(p) for p in a]) for a in missing))
    total = CycRat.zero(field.p, field.q)
    for avec in support:
        total = total + tbl.entries[poly_key(avec)] * psi_ratf(dot(avec, xvec))
    return total


def normalized_coefficient(h, avec, field):
    """c_a(h) = |det y_a| q^{2(1-r)} h*(a, y_a), alpha_i = max(2, deg a_i + 2)."""
    rm1 = len(avec)
    alphas = tuple(max(2, int(a.deg) + 2) if not a.is_zero() else 2 for a in avec)
    hstar = fourier_coefficient(h, avec, alphas, field)
    q = field.q
    return hstar * (Fraction(q) ** sum(alphas) * Fraction(1, q ** (2 * rm1)))


def fourier_coefficient_general(h, avec, ymat, field):
    """h*(a, y) for a general invertible y over F_q(T): reduce
    y = gamma y0 kappa and use h*(a, gamma y0) = h*(a gamma^{-t}, y0)
    (valid for left-GL(A)-invariant, right-GL(O)-invariant h)."""
    gamma, yexps = reduce_y_transcript(ymat)
    gamma_inv = mat_inv(gamma)
    at = vec_mat(tuple(RatF(a) for a in avec),
                 tuple(tuple(gamma_inv[j][i] for j in range(len(gamma_inv)))
                       for i in range(len(gamma_inv))))
    a_red = []
    for x in at:
        if not x.den.is_one():
            raise ValueError("transported character left the polynomial ring")
        a_red.append(x.num)
    hprime = lambda u, _exps: h(vec_mat(u, gamma_inv), ymat)
    return fourier_coefficient(hprime, tuple(a_red), yexps, field)


@dataclass
class ScalingCheckItem:
    yexps: tuple
    i: int
    a: tuple
    lhs: CycRat
    rhs: CycRat
    ok: bool


def coefficient_harmonicity_check(tbl_family, yexps_list, field):
    """The q^{-1}-scaling law h*(a, y d_i(T)) = q^{-1} h*(a, y) across a
    family of tables; tbl_family maps an exponent tuple to a FourierTable."""
    q = field.q
    report = []
    for yexps in yexps_list:
        base = tbl_family(yexps)
        for i in range(len(yexps)):
            up = tuple(n + (1 if j == i else 0) for j, n in enumerate(yexps))
            scaled = tbl_family(up)
            for avec in table_support(field, yexps):
                lhs = scaled.get(avec)
                rhs = base.get(avec) * Fraction(1, q)
                report.append(ScalingCheckItem(yexps, i, poly_key(avec),
                                               lhs, rhs, lhs == rhs))
    return report
