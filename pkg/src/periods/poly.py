"""Sparse homogeneous multivariate polynomials over an exact field.

Monomials are exponent tuples; the monomial order is graded reverse
lexicographic with x0 > x1 > ... > x_{n+1} throughout.
"""

from __future__ import annotations

from itertools import combinations

from .fields import QQ_FIELD, QQT_FIELD, RatFunc, as_mpq


def grevlex_key(mono: tuple) -> tuple:
    """Sort key: k(a) > k(b) iff a > b in grevlex."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True iff monomial a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """Exponent vector of a/b; caller ensures divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(num_vars: int, degree: int):
    """Yield all exponent tuples of the given total degree, grevlex-descending."""
    if degree < 0:
        return
    out = []
    for bars in combinations(range(degree + num_vars - 1), num_vars - 1):
        expo = []
        prev = -1
        for b in bars:
            expo.append(b - prev - 1)
            prev = b
        expo.append(degree + num_vars - 2 - prev)
        out.append(tuple(expo))
    out.sort(key=grevlex_key, reverse=True)
    yield from out


class HomogeneousPolynomial:
    """Sparse homogeneous polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("num_vars", "terms", "degree", "field")

    def __init__(self, num_vars: int, terms: dict, field=QQ_FIELD, _checked=False):
        self.num_vars = num_vars
        self.field = field
        if not _checked:
            terms = {m: c for m, c in terms.items() if c}
            degrees = {sum(m) for m in terms}
            if len(degrees) > 1:
                raise ValueError(f"not homogeneous: degrees {sorted(degrees)}")
            for m in terms:
                if len(m) != num_vars or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m}")
        self.terms = terms
        self.degree = sum(next(iter(terms))) if terms else -1

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, num_vars: int, field=QQ_FIELD):
        return cls(num_vars, {}, field, _checked=True)

    @classmethod
    def monomial(cls, num_vars: int, mono: tuple, coeff=None, field=QQ_FIELD):
        if coeff is None:
            coeff = field.one
        return cls(num_vars, {tuple(mono): coeff} if coeff else {}, field)

    @classmethod
    def from_int_terms(cls, num_vars: int, terms: dict, field=QQ_FIELD):
        """Terms with int/str/Fraction coefficients, coerced into the field."""
        return cls(num_vars,
                   {tuple(m): field.from_mpq(as_mpq(c)) for m, c in terms.items()},
                   field)

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------
    def _compat(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError("mixed variable counts")
        if self and other and self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return HomogeneousPolynomial(self.num_vars, terms, self.field, _checked=True)

    def __neg__(self):
        return HomogeneousPolynomial(
            self.num_vars, {m: -c for m, c in self.terms.items()},
            self.field, _checked=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return HomogeneousPolynomial.zero(self.num_vars, self.field)
        return HomogeneousPolynomial(
            self.num_vars, {m: c * v for m, v in self.terms.items()},
            self.field, _checked=True)

    def mul_term(self, mono: tuple, coeff):
        """Multiply by coeff * x^mono."""
        if not coeff:
            return HomogeneousPolynomial.zero(self.num_vars, self.field)
        return HomogeneousPolynomial(
            self.num_vars,
            {mono_mul(m, mono): coeff * c for m, c in self.terms.items()},
            self.field, _checked=True)

    def __mul__(self, other):
        if self.num_vars != other.num_vars:
            raise ValueError("mixed variable counts")
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                p = c1 * c2
                s = terms.get(m)
                if s is None:
                    terms[m] = p
                else:
                    s = s + p
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
        return HomogeneousPolynomial(self.num_vars, terms, self.field, _checked=True)

    # -- structure ---------------------------------------------------------
    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def sorted_terms(self):
        """(monomial, coeff) pairs in grevlex-descending order."""
        return sorted(self.terms.items(), key=lambda mc: grevlex_key(mc[0]),
                      reverse=True)

    def partial(self, j: int) -> "HomogeneousPolynomial":
        """Partial derivative with respect to x_j."""
        terms = {}
        for m, c in self.terms.items():
            e = m[j]
            if e:
                mm = m[:j] + (e - 1,) + m[j + 1:]
                nc = c * self.field.from_int(e)
                if nc:
                    terms[mm] = terms.get(mm, self.field.zero) + nc
        terms = {m: c for m, c in terms.items() if c}
        return HomogeneousPolynomial(self.num_vars, terms, self.field, _checked=True)

    def coefficient(self, mono: tuple):
        return self.terms.get(tuple(mono), self.field.zero)

    # -- coefficient-field changes ------------------------------------------
    def map_coeffs(self, fn, field):
        terms = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                terms[m] = v
        return HomogeneousPolynomial(self.num_vars, terms, field, _checked=True)

    def to_ratfunc_field(self) -> "HomogeneousPolynomial":
        """Embed a QQ-coefficient polynomial into QQ(t) coefficients."""
        return self.map_coeffs(lambda c: RatFunc.from_mpq(c), QQT_FIELD)

    def eval_t(self, t_value) -> "HomogeneousPolynomial":
        """Specialize RatFunc coefficients at a rational t-value."""
        return self.map_coeffs(lambda c: c.eval(t_value), QQ_FIELD)

    def diff_t(self) -> "HomogeneousPolynomial":
        """Coefficient-wise d/dt for RatFunc-coefficient polynomials."""
        return self.map_coeffs(lambda c: c.diff(), self.field)

    # -- display -----------------------------------------------------------
    def __repr__(self):
        return self.to_string()

    def to_string(self, var_names=None) -> str:
        if not self.terms:
            return "0"
        if var_names is None:
            var_names = [f"x{i}" for i in range(self.num_vars)]
        bits = []
        for m, c in self.sorted_terms():
            mono_bits = []
            for i, e in enumerate(m):
                if e == 1:
                    mono_bits.append(var_names[i])
                elif e > 1:
                    mono_bits.append(f"{var_names[i]}^{e}")
            mono_s = "*".join(mono_bits)
            c_s = str(c)
            if mono_s:
                if c_s == "1":
                    term = mono_s
                elif c_s == "-1":
                    term = f"-{mono_s}"
                elif "/" in c_s and isinstance(c, RatFunc):
                    term = f"({c_s})*{mono_s}"
                else:
                    term = f"{c_s}*{mono_s}"
            else:
                term = c_s if "/" not in c_s or not isinstance(c, RatFunc) else f"({c_s})"
            bits.append(term)
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out


def power_sum(num_vars: int, d: int, coeffs=None, field=QQ_FIELD) -> HomogeneousPolynomial:
    """c_0 x_0^d + ... + c_{k-1} x_{k-1}^d (Fermat-type equations)."""
    if coeffs is None:
        coeffs = [1] * num_vars
    terms = {}
    for i, c in enumerate(coeffs):
        c = field.from_mpq(as_mpq(c))
        if c:
            m = tuple(d if j == i else 0 for j in range(num_vars))
            terms[m] = c
    return HomogeneousPolynomial(num_vars, terms, field)
