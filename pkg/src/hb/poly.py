"""The polynomial ring A = F_q[T] and the rational function field F_q(T).

Coefficients are stored low-to-high as integer codes of the coefficient
field (see fields.py).  deg(0) is the sentinel -inf so that degree
comparisons behave; call sites that exponentiate check for zero first.

RatF is an exact fraction num/den with den monic and gcd-reduced.  It
doubles as the exact model of F_infinity = F_q((1/T)): ord at infinity is
deg(den) - deg(num) and finitely many 1/T-expansion coefficients can be
extracted exactly by long division.
"""

import math
import re

from .fields import get_field

NEG_INF = -math.inf


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(field):
        return Poly(field, ())

    @staticmethod
    def one(field):
        return Poly(field, (1,))

    @staticmethod
    def const(field, c):
        return Poly(field, (c,))

    @staticmethod
    def T(field):
        return Poly(field, (0, 1))

    @staticmethod
    def monomial(field, k, c=1):
        return Poly(field, (0,) * k + (c,))

    # -- basic structure ------------------------------------------------
    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_constant(self):
        return len(self.coeffs) <= 1

    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def absvalue(self):
        """|a| = q^deg(a), with |0| = 0."""
        return 0 if self.is_zero() else self.field.q ** self.deg

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c):
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.deg
        inv_lead = F.inv(other.lead())
        quo = [0] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            if rem[-1] == 0:
                rem.pop()
                continue
            c = F.mul(rem[-1], inv_lead)
            shift = len(rem) - 1 - db
            quo[shift] = c
            for i, bc in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(c, bc))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        return (other % self).is_zero()

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def pow(self, k):
        out = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        """Multiply by T^k."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def evaluate(self, x):
        """Evaluate at a field element (integer code)."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def subs_T_inv_scaled(self):
        """Coefficients reversed: T^deg * self(1/T)."""
        return Poly(self.field, tuple(reversed(self.coeffs)))

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- text format ----------------------------------------------------
    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.deg, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            cs = coeff_str(self.field, c)
            if k == 0:
                terms.append(cs)
            else:
                tk = "T" if k == 1 else f"T^{k}"
                terms.append(tk if cs == "1" else f"{cs}*{tk}")
        return "+".join(terms)

    def __repr__(self):
        return f"Poly(q={self.field.q}, {self})"


def coeff_str(field, c):
    if field.n == 1:
        return str(c)
    # extension coefficients as u-polynomials
    digits = []
    x = c
    i = 0
    while x:
        d = x % field.p
        if d:
            part = "u" if i == 1 else (f"u^{i}" if i else str(d))
            if i >= 1 and d > 1:
                part = f"{d}*{part}"
            digits.append(part)
        x //= field.p
        i += 1
    return "(" + "+".join(reversed(digits)) + ")" if len(digits) > 1 else (digits[0] if digits else "0")


_TERM_RE = re.compile(r"^(?:(?P<coef>[0-9]+|u(?:\^[0-9]+)?|[0-9]+\*u(?:\^[0-9]+)?)\*?)?"
                      r"(?P<var>T(?:\^(?P<exp>[0-9]+))?)?$")


def parse_poly(field, text):
    """Parse the sparse text format, e.g. "T^2+T+1", "2*T^3+1", "u*T+u^2"."""
    s = text.replace(" ", "").replace("-", "+-")
    if s in ("", "0"):
        return Poly.zero(field)
    result = Poly.zero(field)
    for term in s.split("+"):
        if not term:
            continue
        negate = term.startswith("-")
        if negate:
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse polynomial term {term!r}")
        coef = _parse_coeff(field, m.group("coef"))
        exp = 0
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        if negate:
            coef = field.neg(coef)
        result = result + Poly.monomial(field, exp, coef)
    return result


def _parse_coeff(field, text):
    if text is None:
        return 1
    mult = 1
    if "*" in text:
        head, text = text.split("*")
        mult = int(head) % field.p
    if text.startswith("u"):
        j = int(text[2:]) if text.startswith("u^") else 1
        base = field.p ** j if j < field.n else None
        if base is None:
            # reduce u^j mod the modulus
            u = field.p % field.q
            base = field.pow(u, j)
        return field.mul(field.from_int(mult), base)
    return field.from_int(int(text) * mult)


# -- factorization and divisors ----------------------------------------

def monic_irreducibles(field, max_deg):
    """All monic irreducibles of degree <= max_deg, by (degree, coeffs)."""
    out = []
    for d in range(1, max_deg + 1):
        for enc in range(field.q ** d):
            cs = []
            x = enc
            for _ in range(d):
                cs.append(x % field.q)
                x //= field.q
            f = Poly(field, cs + [1])
            if is_irreducible(f):
                out.append(f)
    return out


def is_irreducible(f):
    if f.deg < 1:
        return False
    d = int(f.deg)
    field = f.field
    for dd in range(1, d // 2 + 1):
        for enc in range(field.q ** dd):
            cs = []
            x = enc
            for _ in range(dd):
                cs.append(x % field.q)
                x //= field.q
            g = Poly(field, cs + [1])
            if g.divides(f):
                return False
    return True


def factor_monic(f):
    """Factor into monic irreducibles by trial division; returns [(p, mult)]."""
    if f.is_zero():
        raise ValueError("cannot factor zero")
    f = f.monic()
    out = []
    d = 1
    while f.deg >= 1:
        if f.deg < 2 * d:
            out.append((f, 1))  # smallest divisor exceeds deg/2: irreducible
            break
        for enc in range(f.field.q ** d):
            cs = []
            x = enc
            for _ in range(d):
                cs.append(x % f.field.q)
                x //= f.field.q
            g = Poly(f.field, cs + [1])
            mult = 0
            while g.divides(f):
                f = f // g
                mult += 1
            if mult:
                out.append((g, mult))
        d += 1
    return out


def monic_divisors(a):
    """All monic divisors of a, sorted by (degree, coefficient tuple)."""
    if a.is_zero():
        raise ValueError("divisors of zero undefined")
    divs = [Poly.one(a.field)]
    for p, mult in factor_monic(a):
        powers = [p.pow(k) for k in range(mult + 1)]
        divs = [d * pk for d in divs for pk in powers]
    divs.sort(key=lambda d: (d.deg, d.coeffs))
    return divs


def poly_gcd(a, b):
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv(r0.lead())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def vec_content(avec):
    """Monic gcd of the entries of a PolyVec (zero if all entries zero)."""
    field = avec[0].field
    g = Poly.zero(field)
    for a in avec:
        g = poly_gcd(g, a)
    return g


# -- rational functions ------------------------------------------------

class RatF:
    """Exact element of F_q(T), reduced, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.one(num.field)
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, den = num // g, den // g
                if not den.is_monic():
                    c = num.field.inv(den.lead())
                    num, den = num.scale(c), den.scale(c)
        self.num = num
        self.den = den

    @staticmethod
    def zero(field):
        return RatF(Poly.zero(field))

    @staticmethod
    def one(field):
        return RatF(Poly.one(field))

    @staticmethod
    def from_poly(p):
        return RatF(p)

    @staticmethod
    def pi_power(field, k):
        """pi^k = T^(-k)."""
        if k >= 0:
            return RatF(Poly.one(field), Poly.monomial(field, k), _reduced=True)
        return RatF(Poly.monomial(field, -k))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def ord_inf(self):
        """Valuation at infinity; ord(T) = -1.  +inf for zero."""
        if self.num.is_zero():
            return math.inf
        return self.den.deg - self.num.deg

    def absvalue(self):
        """|x| = q^{-ord(x)} as an exact integer or Fraction-compatible value."""
        from fractions import Fraction
        if self.is_zero():
            return Fraction(0)
        o = self.ord_inf()
        return Fraction(self.field.q) ** (-o)

    def __add__(self, other):
        return RatF(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatF(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatF(-self.num, self.den, _reduced=True)

    def __mul__(self, other):
        return RatF(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatF(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return (isinstance(other, RatF) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def pi_coeffs(self, lo, hi):
        """Expansion coefficients of pi^k for lo <= k < hi, exactly.

        Writes self = N(1/pi)/D(1/pi) and long-divides the reversed
        polynomials as power series in pi.
        """
        if self.is_zero():
            return [0] * (hi - lo)
        F = self.field
        v = self.ord_inf()
        n_rev = self.num.subs_T_inv_scaled().coeffs  # power series in pi
        d_rev = self.den.subs_T_inv_scaled().coeffs
        need = hi - v
        if need <= 0:
            return [0] * (hi - lo)
        # power series division n_rev/d_rev to 'need' coefficients
        inv0 = F.inv(d_rev[0])
        series = []
        rem = list(n_rev) + [0] * max(0, need - len(n_rev))
        for k in range(need):
            c = F.mul(rem[k], inv0)
            series.append(c)
            if c:
                for j in range(1, len(d_rev)):
                    if k + j < len(rem):
                        rem[k + j] = F.sub(rem[k + j], F.mul(c, d_rev[j]))
        # series[i] is the coefficient of pi^(v+i)
        out = []
        for k in range(lo, hi):
            i = k - v
            out.append(series[i] if 0 <= i < len(series) else 0)
        return out

    def pi_coeff(self, k):
        return self.pi_coeffs(k, k + 1)[0]

    def is_integral(self):
        """Lies in O_infinity (ord >= 0)?"""
        return self.ord_inf() >= 0

    def is_unit_integral(self):
        return self.ord_inf() == 0

    def finite_laurent(self):
        """As a sorted tuple of (exponent, coeff) if self is a finite
        Laurent polynomial in pi (denominator a T-power); else None."""
        den = self.den
        if any(c != 0 for c in den.coeffs[:-1]):
            return None
        k = den.deg if den.coeffs else 0
        # self = num / T^k: term c*T^j -> c * pi^(k-j)
        return tuple(sorted((int(k) - j, c) for j, c in enumerate(self.num.coeffs) if c))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatF({self})"
