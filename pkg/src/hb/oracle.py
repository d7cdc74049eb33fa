"""Valuations of the Drinfeld discriminant from first principles.

Everything here is computed inside F_{q^r}((pi)) with truncated series:
the A-lattice Lambda_z = A z_1 + ... + A z_r is cut off at coefficient
degree D, the polynomial e_V(x) = prod_{lambda in V}(x - lambda) is
built one F_q-basis vector at a time through

    e_{V + F_q w}(x) = e_V(x)^q - e_V(w)^{q-1} e_V(x),

and the Drinfeld module coefficients follow from the functional equation
exp(Tx) = phi_T(exp(x)).  The only convergence certificate is empirical
stabilization between truncation depths D-1 and D; the underlying theory
provides no effective bound, and output is labeled accordingly.

This is deliberately independent of the closed-form coefficient
formulas: it shares no code path with the discriminant module beyond the
base field arithmetic, which is what makes the cross-check meaningful.
"""

from dataclasses import dataclass
from fractions import Fraction

from .fields import FF, embedding, get_field
from .laurent import Laurent, PrecisionError
from .poly import Poly, RatF

DEFAULT_PREC = 80


class StabilizationError(RuntimeError):
    pass


def extension_field(q, r):
    base = get_field(q)
    return FF(base.p, base.n * r)


def base_points(q, r, which=0):
    """z0 = (eps^{r-1}, ..., eps, 1) for the (which+1)-th multiplicative
    generator of F_{q^r}; any generator has degree exactly r over F_q."""
    big = extension_field(q, r)
    gens = []
    for a in range(2, big.q):
        x, order = a, 1
        while x != 1:
            x = big.mul(x, a)
            order += 1
        if order == big.q - 1:
            gens.append(a)
            if len(gens) > which:
                break
    if len(gens) <= which:
        raise ValueError("not enough generators")
    eps = gens[which]
    coords = [big.pow(eps, r - 1 - i) for i in range(r)]
    return tuple(Laurent.const(big, c) for c in coords)


def ratf_to_laurent(x, big, embed, prec):
    """An exact F_q(T) value as a Laurent series over the extension."""
    fl = x.finite_laurent()
    if fl is not None:
        return Laurent.from_pairs(big, [(e, embed[c]) for e, c in fl])
    lo = int(x.ord_inf())
    cs = x.pi_coeffs(lo, lo + prec)
    return Laurent(big, lo, [embed[c] for c in cs], lo + prec)


def act(g, z, big, embed, prec):
    """The point g . z: apply g to the column z, then divide by the last
    coordinate so that z_r = 1 again."""
    r = len(g)
    rows = []
    for i in range(r):
        acc = Laurent.zero(big)
        for j in range(r):
            if not g[i][j].is_zero():
                acc = acc + ratf_to_laurent(g[i][j], big, embed, prec) * z[j]
        rows.append(acc)
    jfac = rows[-1].inverse(prec)
    out = [x * jfac for x in rows[:-1]]
    return tuple(out) + (Laurent.one(big),)


def exp_coefficients(z, D, K, prec=None):
    """Monic-normalized coefficients a_0 = 1, a_1, ..., a_K of x^{q^k}
    in e_V(x) / (linear coefficient of e_V) over the truncated lattice
    V = {sum a_i z_i : deg a_i <= D}, built one F_q-basis vector at a
    time by the subspace recursion divided through by its new linear
    coefficient:

        ehat'(x) = ehat(x) - ehat(x)^q / v^{q-1},    v = ehat(w).

    Working with the normalized coefficients is essential: the raw
    alpha_k carry valuations on the scale of the lattice point count,
    and any fixed-width certified window around them collapses.

    The evaluations v = ehat(w) are never formed as linear sums of the
    coefficients (the terms a_k w^{q^k} span a huge exponent range and
    the sum cancels far below any fixed window).  Instead the values
    ehat(w_m) at all later basis vectors are carried through the same
    recursion, one subtraction per step, and each is re-anchored at its
    exact valuation ord(w_m) + sum over nonzero lambda in V of
    (ord(w_m - lambda) - ord(lambda)) — the product formula for
    e_V(w_m)/alpha_0 — maintained incrementally as the point set grows.
    A window too narrow to reach the true valuation raises
    PrecisionError, which the callers turn into a precision retry."""
    big = z[0].field
    # the F_q-structure: q = p^e where e = (extension degree)/r is not
    # recoverable from big alone; infer from the rank instead
    r = len(z)
    e = big.n // r
    q = big.p ** e
    width = prec if prec is not None else 2 * DEFAULT_PREC

    def cap(x):
        if x.known_zero():
            return x
        bound = x.ord() + width
        if x.prec is not None:
            bound = min(bound, x.prec)
        return Laurent(big, x.val, x.coeffs[:max(bound - x.val, 0)], bound)

    def reanchor(x, t):
        """x with its valuation pinned to the externally known value t."""
        if x.prec is not None and t >= x.prec:
            raise PrecisionError(
                f"certified window ends at pi^{x.prec} but e_V(w) has "
                f"valuation {t}")
        drop = t - x.val
        if drop < 0:
            raise AssertionError("computed valuation below the product bound")
        coeffs = x.coeffs[drop:]
        if not coeffs or coeffs[0] == 0:
            raise AssertionError("leading coefficient lost at the anchor")
        return Laurent(big, t, coeffs, x.prec)

    # nonzero F_q-scalars inside the extension
    scalars = [c for c in range(1, big.q) if big.pow(c, q) == c]
    if q ** (r * (D + 1)) > 300000:
        raise ValueError("truncated lattice too large; reduce D")
    basis = [z[i] * Laurent.pi_power(big, -j)
             for i in range(r) for j in range(D + 1)]
    evals = [cap(w) for w in basis]   # ehat_V(w_m), exact at V = {0}
    ords = [w.ord() for w in basis]   # their exact valuations
    points = []                       # the nonzero points of V
    coeffs = [Laurent.one(big)]
    for t, w in enumerate(basis):
        v = reanchor(evals[t], ords[t])
        inv = v.inverse(width)
        rho = inv                                    # 1/v^{q-1}
        for _ in range(q - 2):
            rho = cap(rho * inv)
        new = [Laurent.one(big)]
        for k in range(1, len(coeffs) + 1):
            term = -(coeffs[k - 1].q_power(e) * rho)
            if k < len(coeffs):
                term = coeffs[k] + term
            new.append(cap(term))
        coeffs = new
        fresh = [cap(w.scale(c)) for c in scalars]
        fresh += [cap(lam + wc) for lam, _ in points for wc in fresh[:len(scalars)]]
        fresh = [(x, x.ord()) for x in fresh]
        points.extend(fresh)
        # push the remaining evaluations through the recursion and
        # advance their exact product-formula valuations
        for m in range(t + 1, len(basis)):
            wm = basis[m]
            upd = evals[m] - evals[m].q_power(e) * rho
            for lam, lam_ord in fresh:
                ords[m] += (wm - lam).ord() - lam_ord
            evals[m] = cap(reanchor(upd, ords[m]))
    return coeffs[:K + 1]


@dataclass
class DrinfeldCoeffs:
    g: tuple          # g_1..g_K
    a: tuple          # exp coefficients a_0..a_K
    D: int
    residual_ord: object  # valuation lower bound of the functional-equation residual beyond index r


def drinfeld_coeffs(z, D, r, K=None, prec=None):
    """g_1..g_K of phi_T = Tx + g_1 x^q + ... for the lattice of z, from
    the triangular solve of exp(Tx) = phi_T(exp(x))."""
    big = z[0].field
    e = big.n // r
    if K is None:
        K = r + 1
    a = exp_coefficients(z, D, K, prec=prec)
    gs = []
    q = big.p ** e
    for k in range(1, K + 1):
        tq = Laurent.from_pairs(big, [(-q ** k, 1), (-1, big.neg(1))])  # T^{q^k} - T
        acc = a[k] * tq
        for i in range(1, k):
            acc = acc - gs[i - 1] * a[k - i].q_power(e * i)
        gs.append(acc)
    # beyond index r the recursion must give 0: functional-equation residual
    residual = None
    for k in range(r + 1, K + 1):
        res = gs[k - 1]
        bound = res._lower_bound()
        residual = bound if residual is None else min(residual, bound)
    return DrinfeldCoeffs(g=tuple(gs[:r]), a=tuple(a), D=D, residual_ord=residual)


def _delta_ord(z, D, r, prec=None):
    dc = drinfeld_coeffs(z, D, r, prec=prec)
    return dc.g[r - 1].ord(), dc


def s_matrix(field, r):
    return tuple(tuple((RatF.pi_power(field, -1) if i == 0 else RatF.one(field))
                       if i == j else RatF.zero(field) for j in range(r))
                 for i in range(r))


def _certified_ord(z, D, r, what, prec=None):
    """ord Delta at depths D-1 and D; stabilization is the certificate."""
    o_prev, _ = _delta_ord(z, D - 1, r, prec=prec)
    o, dc = _delta_ord(z, D, r, prec=prec)
    if o_prev != o:
        raise StabilizationError(
            f"{what}: ord(Delta) moved from {o_prev} to {o} between "
            f"truncation depths {D-1} and {D}; increase --deg-bound")
    return o


def _adaptive(prec, body):
    """Rerun with doubled series precision when a certified window
    collapses; the lattice depth D is never touched here."""
    attempt = prec
    while True:
        try:
            return body(attempt)
        except PrecisionError:
            if attempt >= 16 * prec:
                raise
            attempt *= 2


def p_delta_direct(g, q, r, D=6, prec=DEFAULT_PREC, which_generator=0):
    """P1(Delta_r)(g) = log_q|Delta(g S z0)| - log_q|Delta(g z0)|,
    S = diag(T, 1, ..., 1) — valuations from truncated lattice sums."""
    if r > 3:
        raise ValueError("lattice sums are only tractable for r <= 3")
    field = g[0][0].field
    big = extension_field(q, r)
    embed = embedding(q, big.q)
    z0 = base_points(q, r, which_generator)
    from .building import mat_mul
    gS = mat_mul(g, s_matrix(field, r))

    def body(pr):
        za = act(g, z0, big, embed, pr + 40)
        zb = act(gS, z0, big, embed, pr + 40)
        oa = _certified_ord(za, D, r, "Delta(g z0)", prec=pr)
        ob = _certified_ord(zb, D, r, "Delta(g S z0)", prec=pr)
        return oa - ob
    return _adaptive(prec, body)


def _n_star(n, z, big, embed, prec):
    nl = ratf_to_laurent(RatF(n), big, embed, prec)
    return (nl * z[0],) + z[1:]


def p_theta_direct(n, g, q, r, D=6, prec=DEFAULT_PREC, which_generator=0):
    """P1(Theta_n)(g) = P1(Delta)(g) - P1(Delta_n)(g) with
    Delta_n(z) = Delta(n z_1, z_2, ..., z_r)."""
    if r > 3:
        raise ValueError("lattice sums are only tractable for r <= 3")
    field = g[0][0].field
    big = extension_field(q, r)
    embed = embedding(q, big.q)
    z0 = base_points(q, r, which_generator)
    from .building import mat_mul
    gS = mat_mul(g, s_matrix(field, r))

    def body(pr):
        za = act(g, z0, big, embed, pr + 40)
        zb = act(gS, z0, big, embed, pr + 40)
        oa = _certified_ord(za, D, r, "Delta(g z0)", prec=pr)
        ob = _certified_ord(zb, D, r, "Delta(g S z0)", prec=pr)
        na = _certified_ord(_n_star(n, za, big, embed, pr + 40), D, r,
                            "Delta(n*g z0)", prec=pr)
        nb = _certified_ord(_n_star(n, zb, big, embed, pr + 40), D, r,
                            "Delta(n*g S z0)", prec=pr)
        return (oa - ob) - (na - nb)
    return _adaptive(prec, body)


def p_delta_on_p_point(x, yexps, q, r, D=6, prec=DEFAULT_PREC):
    """Oracle value of P1(Delta_r) at the mirabolic point (x, y)."""
    from .fourier import PPoint
    field = get_field(q)
    return p_delta_direct(PPoint(tuple(x), tuple(yexps)).matrix(field),
                          q, r, D=D, prec=prec)
