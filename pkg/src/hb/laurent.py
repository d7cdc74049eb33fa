"""The local field F_{q^m}((pi)), pi = 1/T, as precision-tracked series.

A Laurent value stores coefficients (integer codes of its coefficient
field) for the exponents val, val+1, ... together with an absolute
precision bound: the element is known modulo pi^prec.  prec = None means
the value is an exactly known finite Laurent polynomial.

The building and fourier modules work with exact values only (they use
RatF for division-heavy linear algebra); inexact series appear in the
delta oracle, where truncation is intrinsic.
"""

import math
from fractions import Fraction

from .algebra import psi0
from .fields import get_field

DEFAULT_PREC = 40


class PrecisionError(ArithmeticError):
    pass


class Laurent:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field, val, coeffs, prec=None):
        coeffs = list(coeffs)
        # strip leading zeros
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        if prec is None:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        else:
            # discard coefficients at or beyond the precision bound
            if val + len(coeffs) > prec:
                coeffs = coeffs[:max(prec - val, 0)]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if not coeffs:
                val = prec
        if not coeffs and prec is None:
            val = 0
        self.field = field
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(field, prec=None):
        return Laurent(field, prec if prec is not None else 0, (), prec)

    @staticmethod
    def one(field):
        return Laurent(field, 0, (1,))

    @staticmethod
    def const(field, c):
        return Laurent(field, 0, (c,))

    @staticmethod
    def pi_power(field, k, c=1):
        return Laurent(field, k, (c,))

    @staticmethod
    def from_poly(p, into_field=None, embed=None):
        """A polynomial in T as an exact Laurent polynomial in pi."""
        field = into_field or p.field
        cs = list(p.coeffs)
        if embed:
            cs = [embed[c] for c in cs]
        return Laurent(field, -len(cs) + 1 if cs else 0, list(reversed(cs)))

    @staticmethod
    def from_ratf(x, prec):
        """Truncated expansion of a rational function; exact when the
        denominator is a T-power."""
        fl = x.finite_laurent()
        if fl is not None:
            return Laurent.from_pairs(x.field, fl)
        lo = int(x.ord_inf()) if not x.is_zero() else prec
        cs = x.pi_coeffs(lo, prec)
        return Laurent(x.field, lo, cs, prec)

    @staticmethod
    def from_pairs(field, pairs):
        if not pairs:
            return Laurent.zero(field)
        lo = min(e for e, _ in pairs)
        hi = max(e for e, _ in pairs)
        cs = [0] * (hi - lo + 1)
        for e, c in pairs:
            cs[e - lo] = field.add(cs[e - lo], c)
        return Laurent(field, lo, cs)

    # -- structure ------------------------------------------------------
    def is_exact(self):
        return self.prec is None

    def is_certified_zero(self):
        return self.is_exact() and not self.coeffs

    def known_zero(self):
        return not self.coeffs

    def ord(self):
        """Certified valuation: the leading exponent."""
        if self.coeffs:
            return self.val
        if self.is_exact():
            return math.inf
        raise PrecisionError(
            f"element is zero modulo pi^{self.prec}; valuation not certified")

    def absvalue(self):
        o = self.ord()
        if o is math.inf:
            return Fraction(0)
        return Fraction(self.field.q) ** (-o)

    def coeff(self, k):
        """Coefficient of pi^k; PrecisionError if k is beyond the window."""
        if self.prec is not None and k >= self.prec:
            raise PrecisionError(f"coefficient of pi^{k} unknown (prec {self.prec})")
        i = k - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _lower_bound(self):
        # certified lower bound for the valuation
        if self.coeffs:
            return self.val
        return math.inf if self.is_exact() else self.prec

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        F = self.field
        prec = _min_prec(self.prec, other.prec)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if prec is not None:
            hi = min(hi, prec)
        cs = [0] * max(hi - lo, 0)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                k = src.val + i
                if k < hi:
                    cs[k - lo] = F.add(cs[k - lo], c)
        return Laurent(F, lo, cs, prec)

    def __neg__(self):
        F = self.field
        return Laurent(F, self.val, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.is_certified_zero() or other.is_certified_zero():
            return Laurent.zero(F)
        prec = None
        if self.prec is not None or other.prec is not None:
            a = self._lower_bound() + _prec_of(other)
            b = other._lower_bound() + _prec_of(self)
            prec = min(a, b)
            if prec is math.inf:
                prec = None
            if prec is not None and not self.coeffs and not other.coeffs:
                pass
        if not self.coeffs or not other.coeffs:
            # known-zero times something: zero to the computed precision
            return Laurent.zero(F, None if prec is None else int(prec))
        lo = self.val + other.val
        hi = self.val + len(self.coeffs) + other.val + len(other.coeffs) - 1
        if prec is not None:
            prec = int(prec)
            hi = min(hi, prec)
        cs = [0] * max(hi - lo, 0)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            ka = self.val + i
            if ka + other.val >= hi:
                break
            for j, b in enumerate(other.coeffs):
                k = ka + other.val + j
                if k >= hi:
                    break
                if b:
                    cs[k - lo] = F.add(cs[k - lo], F.mul(a, b))
        return Laurent(F, lo, cs, prec)

    def scale(self, c):
        F = self.field
        if c == 0:
            return Laurent.zero(F, self.prec)
        return Laurent(F, self.val, [F.mul(c, x) for x in self.coeffs], self.prec)

    def shift(self, k):
        """Multiply by pi^k."""
        return Laurent(self.field, self.val + k, self.coeffs,
                       None if self.prec is None else self.prec + k)

    def inverse(self, prec=None):
        """Series inverse.  For a non-monomial exact input a working
        precision must be available (argument or DEFAULT_PREC)."""
        if not self.coeffs:
            raise (ZeroDivisionError("inverse of exact zero") if self.is_exact()
                   else PrecisionError("inverse of uncertified zero"))
        F = self.field
        v = self.val
        if self.is_exact() and len(self.coeffs) == 1:
            return Laurent(F, -v, (F.inv(self.coeffs[0]),))
        if self.prec is not None:
            rel = self.prec - v
        else:
            rel = (prec if prec is not None else DEFAULT_PREC)
        rel = int(rel)
        inv0 = F.inv(self.coeffs[0])
        out = [0] * rel
        out[0] = inv0
        for k in range(1, rel):
            acc = 0
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                if self.coeffs[j]:
                    acc = F.add(acc, F.mul(self.coeffs[j], out[k - j]))
            out[k] = F.neg(F.mul(inv0, acc))
        return Laurent(F, -v, out, -v + rel)

    def __truediv__(self, other):
        return self * other.inverse()

    def frobenius(self):
        """x -> x^p (coefficientwise p-th power, exponents scaled by p)."""
        F = self.field
        p = F.p
        if not self.coeffs:
            return Laurent.zero(F, None if self.prec is None else self.prec * p)
        pairs = [(p * (self.val + i), F.pow(c, p))
                 for i, c in enumerate(self.coeffs) if c]
        lo = p * self.val
        hi = p * (self.val + len(self.coeffs) - 1) + 1
        cs = [0] * (hi - lo)
        for e, c in pairs:
            cs[e - lo] = c
        prec = None
        if self.prec is not None:
            prec = p * self.prec  # gaps: coefficients beyond are genuinely known 0? no:
            # unknown tail pi^prec * u maps to pi^(p*prec) * u^p, so p*prec is safe
        return Laurent(F, lo, cs, prec)

    def q_power(self, e):
        """x -> x^(p^e)."""
        out = self
        for _ in range(e):
            out = out.frobenius()
        return out

    def truncate(self, prec):
        p = prec if self.prec is None else min(self.prec, prec)
        return Laurent(self.field, self.val, self.coeffs, p)

    def __eq__(self, other):
        return (isinstance(other, Laurent) and self.field == other.field
                and self.val == other.val and self.coeffs == other.coeffs
                and self.prec == other.prec)

    def __hash__(self):
        return hash((self.field.q, self.val, self.coeffs, self.prec))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            k = self.val + i
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            elif k < 0:
                tk = "T" if k == -1 else f"T^{-k}"
                terms.append(tk if c == 1 else f"{c}*{tk}")
            else:
                tk = "pi" if k == 1 else f"pi^{k}"
                terms.append(tk if c == 1 else f"{c}*{tk}")
        body = "+".join(terms) if terms else "0"
        if self.prec is not None:
            body += f" + O(pi^{self.prec})"
        return body

    def __repr__(self):
        return f"Laurent({self})"


def _prec_of(x):
    return math.inf if x.prec is None else x.prec


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def psi(x):
    """The additive character of F_infinity: psi(sum a_i pi^i) =
    psi_0(Tr_{F_q/F_p}(a_1)).  Trivial on A and on pi^2 O_infinity."""
    field = x.field
    a1 = x.coeff(1)
    return psi0(field.p, field.trace_to_prime(a1), q=field.q)


def psi_ratf(x):
    """psi of an exact rational function (expansion coefficient of pi^1)."""
    field = x.field
    a1 = x.pi_coeff(1)
    return psi0(field.p, field.trace_to_prime(a1), q=field.q)


# -- matrices of Laurent values ----------------------------------------

class LocalMatrix:
    """Square matrix over F_{q^m}((pi)) with per-entry precision."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(tuple(row) for row in entries)
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("matrix must be square")

    @property
    def size(self):
        return len(self.entries)

    @property
    def field(self):
        return self.entries[0][0].field

    @staticmethod
    def identity(field, n):
        return LocalMatrix([[Laurent.one(field) if i == j else Laurent.zero(field)
                             for j in range(n)] for i in range(n)])

    def __mul__(self, other):
        n = self.size
        F = self.field
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Laurent.zero(F)
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return LocalMatrix(out)

    def det(self):
        """Determinant by fraction-free cofactor expansion (r <= 4)."""
        return _det(self.entries, self.field)

    def abs_det(self):
        """q^{-ord(det)} as an exact rational."""
        d = self.det()
        try:
            o = d.ord()
        except PrecisionError as exc:
            raise PrecisionError(f"determinant valuation not certified: {exc}")
        if o is math.inf:
            raise ZeroDivisionError("matrix is singular")
        return Fraction(self.field.q) ** (-o)

    def inverse(self, prec=None):
        """Gaussian elimination with minimum-valuation pivoting."""
        n = self.size
        F = self.field
        a = [list(row) for row in self.entries]
        inv = [[Laurent.one(F) if i == j else Laurent.zero(F) for j in range(n)]
               for i in range(n)]
        for col in range(n):
            piv, best = None, math.inf
            for i in range(col, n):
                x = a[i][col]
                if x.coeffs and x.val < best:
                    piv, best = i, x.val
            if piv is None:
                raise PrecisionError(
                    f"no certified pivot in column {col}; matrix singular within precision")
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            pivinv = a[col][col].inverse(prec)
            a[col] = [x * pivinv for x in a[col]]
            inv[col] = [x * pivinv for x in inv[col]]
            for i in range(n):
                if i != col and a[i][col].coeffs:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
                    inv[i] = [x - f * y for x, y in zip(inv[i], inv[col])]
        return LocalMatrix(inv)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.entries) + "]"


def _det(rows, field):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Laurent.zero(field)
    sign = 1
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = rows[0][j] * _det(minor, field)
        if sign < 0:
            term = -term
        total = total + term
        sign = -sign
    return total
