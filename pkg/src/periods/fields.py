"""Exact coefficient fields: rationals, univariate rational functions in t,
and Gaussian rationals.

Rationals are gmpy2.mpq (auto-canonical: reduced, positive denominator).
Univariate polynomial arithmetic is delegated to sympy's sparse polynomial
ring over gmpy2-backed QQ; RatFunc keeps numerator/denominator reduced and
the denominator monic after every operation.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq, mpz
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

# The ambient univariate ring QQ[t] for deformation parameters.
T_RING, T_GEN = ring("t", QQ)


def as_mpq(x) -> mpq:
    """Coerce ints, Fractions, strings like '3/4', and mpq to mpq."""
    if isinstance(x, type(mpq(0))):
        return x
    if isinstance(x, (int, mpz)):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def mpq_to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def poly_from_mpq_list(coeffs) -> "PolyElt":
    """Dense list [c0, c1, ...] (ascending powers of t) -> QQ[t] element."""
    p = T_RING.zero
    for i, c in enumerate(coeffs):
        c = as_mpq(c)
        if c:
            p += T_RING.from_dict({(i,): QQ(c.numerator, c.denominator)})
    return p


def poly_to_mpq_list(p) -> list:
    """QQ[t] element -> dense ascending coefficient list of mpq."""
    if not p:
        return []
    n = p.degree()
    out = [mpq(0)] * (n + 1)
    for (e,), c in p.terms():
        out[e] = mpq(c.numerator, c.denominator)
    return out


def poly_eval_mpq(p, x: mpq) -> mpq:
    """Evaluate a QQ[t] element at a rational point, exactly."""
    acc = mpq(0)
    for c in reversed(poly_to_mpq_list(p) or [mpq(0)]):
        acc = acc * x + c
    return acc


class RatFunc:
    """A rational function num/den in QQ(t), reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = T_RING.one
        if not den:
            raise ZeroDivisionError("zero denominator in RatFunc")
        if not _reduced:
            if num:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num.quo(g)
                    den = den.quo(g)
            else:
                den = T_RING.one
            lc = den.LC
            if lc != QQ(1):
                inv = QQ(1) / lc
                num = num.mul_ground(inv)
                den = den.mul_ground(inv)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_mpq(cls, q) -> "RatFunc":
        q = as_mpq(q)
        return cls(T_RING.ground_new(QQ(q.numerator, q.denominator)),
                   T_RING.one, _reduced=True)

    @classmethod
    def t(cls) -> "RatFunc":
        return cls(T_GEN, T_RING.one, _reduced=True)

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(T_RING.zero, T_RING.one, _reduced=True)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(T_RING.one, T_RING.one, _reduced=True)

    # -- predicates --------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == T_RING.one

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num.terms()), tuple(self.den.terms())))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RatFunc(a + c, b)
        g = b.gcd(d)
        if g.degree() == 0:
            return RatFunc(a * d + c * b, b * d)
        b1, d1 = b.quo(g), d.quo(g)
        return RatFunc(a * d1 + c * b1, b1 * d)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if not a or not c:
            return RatFunc.zero()
        g1 = a.gcd(d)
        if g1.degree() > 0:
            a, d = a.quo(g1), d.quo(g1)
        g2 = c.gcd(b)
        if g2.degree() > 0:
            c, b = c.quo(g2), b.quo(g2)
        return RatFunc(a * c, b * d)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero RatFunc")
        return self * RatFunc(other.den, other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, mpz, Fraction)) or isinstance(other, type(mpq(0))):
            return RatFunc.from_mpq(as_mpq(other))
        return NotImplemented

    # -- calculus / evaluation --------------------------------------------
    def diff(self) -> "RatFunc":
        dn = self.num.diff(T_GEN)
        dd = self.den.diff(T_GEN)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def eval(self, x) -> mpq:
        x = as_mpq(x)
        d = poly_eval_mpq(self.den, x)
        if not d:
            raise ZeroDivisionError(f"RatFunc has a pole at t={x}")
        return poly_eval_mpq(self.num, x) / d

    # -- display -----------------------------------------------------------
    def __repr__(self):
        if self.is_polynomial():
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"


def poly_str(p) -> str:
    """Human-readable string for a QQ[t] element, ascending powers hidden."""
    if not p:
        return "0"
    bits = []
    for (e,), c in sorted(p.terms(), reverse=True):
        q = mpq(c.numerator, c.denominator)
        if e == 0:
            term = str(q)
        else:
            tpow = "t" if e == 1 else f"t^{e}"
            if q == 1:
                term = tpow
            elif q == -1:
                term = f"-{tpow}"
            else:
                term = f"{q}*{tpow}"
        bits.append(term)
    out = bits[0]
    for b in bits[1:]:
        out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
    return out


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_mpq(re)
        self.im = as_mpq(im)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n2 = other.sq_abs()
        if not n2:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * other.re + self.im * other.im) / n2,
                                (self.im * other.re - self.re * other.im) / n2)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, mpz, Fraction)) or isinstance(other, type(mpq(0))):
            return GaussianRational(as_mpq(other), 0)
        return NotImplemented

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def sq_abs(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def abs_upper(self) -> mpq:
        """Rational upper bound on |z| (the 1-norm)."""
        return abs(self.re) + abs(self.im)

    def abs_lower(self) -> mpq:
        """Rational lower bound on |z| (the max-norm)."""
        return max(abs(self.re), abs(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else ''}{self.im}i)"


def sqrt_lower(q: mpq, bits: int = 64) -> mpq:
    """Rational lower bound for sqrt(q), q >= 0."""
    q = as_mpq(q)
    if q < 0:
        raise ValueError("negative argument")
    if not q:
        return mpq(0)
    scale = mpz(1) << (2 * bits)
    n = (q.numerator * scale) // q.denominator
    r = gmpy2.isqrt(n)
    return mpq(r, mpz(1) << bits)


def sqrt_upper(q: mpq, bits: int = 64) -> mpq:
    """Rational upper bound for sqrt(q), q >= 0."""
    q = as_mpq(q)
    if q < 0:
        raise ValueError("negative argument")
    if not q:
        return mpq(0)
    scale = mpz(1) << (2 * bits)
    n = -((-q.numerator * scale) // q.denominator)  # ceil
    r = gmpy2.isqrt(n)
    if r * r < n:
        r += 1
    return mpq(r, mpz(1) << bits)


class RationalField:
    """Field adapter for gmpy2.mpq coefficients."""

    name = "QQ"

    zero = mpq(0)
    one = mpq(1)

    @staticmethod
    def from_int(n):
        return mpq(n)

    @staticmethod
    def from_mpq(q):
        return as_mpq(q)

    @staticmethod
    def inv(x):
        return 1 / x


class RatFuncField:
    """Field adapter for RatFunc coefficients (rational functions in t)."""

    name = "QQ(t)"

    zero = RatFunc.zero()
    one = RatFunc.one()

    @staticmethod
    def from_int(n):
        return RatFunc.from_mpq(mpq(n))

    @staticmethod
    def from_mpq(q):
        return RatFunc.from_mpq(q)

    @staticmethod
    def inv(x):
        return RatFunc.one() / x


QQ_FIELD = RationalField()
QQT_FIELD = RatFuncField()
