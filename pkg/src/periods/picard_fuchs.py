"""Pencils of hypersurfaces, differentiation under the integral sign, and
minimal annihilating differential operators for pole forms.

The operator for a form p * Omega / f_t^l is found as the first linear
dependence, over QQ(t), among the Griffiths-Dwork reductions of the
successive t-derivatives of the form.
"""

from __future__ import annotations

from gmpy2 import mpq

from .fields import (QQT_FIELD, RatFunc, T_RING, as_mpq, poly_str,
                     poly_to_mpq_list)
from .groebner import GroebnerContext, is_smooth_hypersurface, jacobian_context
from .poly import HomogeneousPolynomial, grevlex_key
from .reduction import PoleForm, gd_reduce


class Pencil:
    """The family f_t = (1-t) f_source + t f_target with smooth endpoints."""

    def __init__(self, f_source: HomogeneousPolynomial,
                 f_target: HomogeneousPolynomial, check_smooth: bool = True):
        if f_source.num_vars != f_target.num_vars or \
                f_source.degree != f_target.degree:
            raise ValueError("pencil endpoints of different degree or dimension")
        if check_smooth:
            if not is_smooth_hypersurface(f_source):
                raise ValueError("pencil source is singular")
            if not is_smooth_hypersurface(f_target):
                raise ValueError("pencil target is singular")
        self.f_source = f_source
        self.f_target = f_target
        self.dt_f = f_target - f_source
        t = RatFunc.t()
        one = RatFunc.one()
        self.f_t = (f_source.to_ratfunc_field().scale(one - t)
                    + f_target.to_ratfunc_field().scale(t))
        self._ctx = None

    @property
    def context(self) -> GroebnerContext:
        """Jacobian context of the generic fiber, over QQ(t)."""
        if self._ctx is None:
            ctx = jacobian_context(self.f_t)
            nv, d = self.f_t.num_vars, self.f_t.degree
            if ctx.standard_monomials(max(nv * (d - 2) + 1, 0)):
                raise ValueError("pencil is generically singular")
            self._ctx = ctx
        return self._ctx

    def basis_size(self) -> int:
        """Dimension N of the generic fiber's residue-basis space."""
        nv, d = self.f_t.num_vars, self.f_t.degree
        n = nv - 2
        total = 0
        for ell in range(1, n + 2):
            s = d * ell - nv
            if s >= 0:
                total += len(self.context.standard_monomials(s))
        return total


def dt(form: PoleForm, pencil: Pencil) -> PoleForm:
    """d/dt of the form under the integral sign.

    Each graded numerator p_l contributes dp_l/dt at order l and
    -l * p_l * (f_target - f_source) at order l+1.
    """
    if form.denominator_poly != pencil.f_t:
        raise ValueError("form does not live over the pencil")
    nv = form.denominator_poly.num_vars
    r = form.pole_order
    dtf = pencil.dt_f.to_ratfunc_field()
    nums = [HomogeneousPolynomial.zero(nv, QQT_FIELD) for _ in range(r + 1)]
    for i, p in enumerate(form.numerators):
        ell = i + 1
        if not p:
            continue
        nums[i] = nums[i] + p.diff_t()
        if dtf:
            nums[i + 1] = nums[i + 1] + (p * dtf).scale(
                RatFunc.from_mpq(mpq(-ell)))
    return PoleForm(form.denominator_poly, nums)


class DifferentialOperator:
    """Element of QQ(t)[d/dt]; also carries a coprime polynomial presentation.

    coefficients[i] is the RatFunc coefficient of the i-th derivative; the
    polynomial presentation has integer-content-free QQ[t] coefficients with
    positive leading coefficient on the top derivative.
    """

    def __init__(self, coefficients):
        coefficients = [c if isinstance(c, RatFunc) else RatFunc.from_mpq(as_mpq(c))
                        for c in coefficients]
        while coefficients and not coefficients[-1]:
            coefficients.pop()
        if not coefficients:
            raise ValueError("zero differential operator")
        self.coefficients = coefficients
        self.poly_coeffs = _clear_denominators(coefficients)

    # -- basic structure ----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def degree(self) -> int:
        return max(p.degree() if p else 0 for p in self.poly_coeffs)

    def order_degree(self) -> tuple:
        return (self.order, self.degree)

    def monic(self) -> "DifferentialOperator":
        lead = self.coefficients[-1]
        if lead == RatFunc.one():
            return self
        return DifferentialOperator([c / lead for c in self.coefficients])

    def __eq__(self, other):
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        a, b = self.monic().coefficients, other.monic().coefficients
        return a == b

    def __repr__(self):
        bits = []
        for i in range(self.order, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            d_s = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            c_s = str(c)
            if d_s and c_s == "1":
                bits.append(d_s)
            elif d_s:
                bits.append(f"({c_s})*{d_s}")
            else:
                bits.append(f"({c_s})")
        return " + ".join(bits)

    # -- serialization -------------------------------------------------------
    def to_integer_strings(self) -> list:
        """Coprime polynomial presentation as ascending integer strings."""
        out = []
        for p in self.poly_coeffs:
            coeffs = poly_to_mpq_list(p)
            out.append([str(int(c)) for c in coeffs])
        return out

    @classmethod
    def from_integer_strings(cls, data) -> "DifferentialOperator":
        from .fields import poly_from_mpq_list
        coeffs = []
        for lst in data:
            p = poly_from_mpq_list([mpq(s) for s in lst])
            coeffs.append(RatFunc(p))
        return cls(coeffs)

    # -- action on forms -----------------------------------------------------
    def apply_to_form(self, form: PoleForm, pencil: Pencil) -> PoleForm:
        """sum_i a_i(t) * (d/dt)^i applied to the form, unreduced."""
        result = None
        current = form
        for i, a in enumerate(self.coefficients):
            if i > 0:
                current = dt(current, pencil)
            if a:
                piece = current.scale(a)
                result = piece if result is None else result + piece
        if result is None:
            raise ValueError("zero operator application")
        return result


def picard_fuchs(numerator: HomogeneousPolynomial, pole_order: int,
                 pencil: Pencil) -> DifferentialOperator:
    """Monic minimal operator annihilating the periods of p*Omega/f_t^l.

    Incremental echelonization over QQ(t) of the reduced derivatives; the
    first failure of rank growth yields the relation.
    """
    ctx = pencil.context
    if numerator.field is not QQT_FIELD:
        numerator = numerator.to_ratfunc_field()
    expected = pencil.f_t.degree * pole_order - pencil.f_t.num_vars
    if numerator.degree != expected:
        raise ValueError(f"numerator degree {numerator.degree} does not match "
                         f"pole order {pole_order} (expected {expected})")
    bound = pencil.basis_size() + 1

    omega = PoleForm.single(numerator, pole_order, pencil.f_t)
    reduced = gd_reduce(omega, ctx)
    pivots = []  # (lead key, monic vector dict, combination dict)
    k = 0
    current_form = reduced
    while k <= bound:
        vec = _form_vector_qqt(current_form)
        comb = {k: RatFunc.one()}
        for key, pvec, pcomb in pivots:
            c = vec.get(key)
            if c:
                _vec_submul(vec, pvec, c)
                _comb_submul(comb, pcomb, c)
        if not vec:
            coeffs = [comb.get(i, RatFunc.zero()) for i in range(k + 1)]
            return DifferentialOperator(coeffs)
        lead = max(vec, key=lambda km: (km[0], grevlex_key(km[1])))
        inv = RatFunc.one() / vec[lead]
        vec = {m: c * inv for m, c in vec.items()}
        comb = {i: c * inv for i, c in comb.items()}
        pivots.append((lead, vec, comb))
        k += 1
        current_form = gd_reduce(dt(current_form, pencil), ctx)
    raise RuntimeError("no linear dependence found below the dimension bound; "
                       "this indicates an arithmetic bug")


def indicial(op: DifferentialOperator) -> list:
    """Indicial polynomial at t=0, as ascending mpq coefficients in a.

    For each derivative index i whose coefficient has t-valuation v_i, the
    pairs achieving min(v_i - i) contribute (lowest coefficient) * falling
    factorial a(a-1)...(a-i+1).
    """
    vals = []
    for i, p in enumerate(op.poly_coeffs):
        if not p:
            continue
        coeffs = poly_to_mpq_list(p)
        v = next(j for j, c in enumerate(coeffs) if c)
        vals.append((i, v, coeffs[v]))
    k0 = min(v - i for i, v, _ in vals)
    poly = [mpq(0)]
    for i, v, c in vals:
        if v - i == k0:
            poly = _poly_add(poly, _poly_scale(_falling_factorial(i), c))
    return _poly_trim(poly)


def holomorphic_exponents(op: DifferentialOperator) -> list:
    """Sorted integer roots of the indicial polynomial; must number order(op).

    Raises if any root is negative, non-integer, or repeated: the operator is
    then not a Picard-Fuchs operator with holomorphic solutions at t=0.
    """
    iota = indicial(op)
    delta = op.order
    if len(iota) - 1 != delta:
        raise ValueError(
            f"indicial polynomial has degree {len(iota) - 1}, expected {delta}; "
            "solutions are not all holomorphic at t=0")
    roots = []
    poly = iota
    bound = _cauchy_root_bound(poly)
    if bound > 10 ** 5:
        raise ValueError("indicial root bound unreasonably large")
    r = 0
    while len(poly) > 1 and r <= bound:
        if _poly_eval(poly, mpq(r)) == 0:
            poly = _deflate(poly, mpq(r))
            if _poly_eval(poly, mpq(r)) == 0:
                raise ValueError(f"indicial root {r} has multiplicity > 1")
            roots.append(r)
        else:
            r += 1
    if len(poly) > 1:
        raise ValueError("indicial polynomial has non-integer or negative roots")
    if len(roots) != delta:
        raise ValueError("could not extract enough integer indicial roots")
    return sorted(roots)


def order_degree(op: DifferentialOperator) -> tuple:
    return op.order_degree()


# -- internals --------------------------------------------------------------

def _form_vector_qqt(form: PoleForm) -> dict:
    out = {}
    for i, p in enumerate(form.numerators):
        for m, c in p.terms.items():
            out[(i + 1, m)] = c
    return out


def _vec_submul(vec: dict, pivot: dict, c) -> None:
    for m, x in pivot.items():
        s = vec.get(m)
        s = (-(c * x)) if s is None else s - c * x
        if s:
            vec[m] = s
        else:
            vec.pop(m, None)


def _comb_submul(comb: dict, pivot: dict, c) -> None:
    for i, x in pivot.items():
        s = comb.get(i)
        s = (-(c * x)) if s is None else s - c * x
        if s:
            comb[i] = s
        else:
            comb.pop(i, None)


def _clear_denominators(coefficients) -> list:
    """QQ(t) coefficient list -> coprime integer-content-free QQ[t] list.

    Multiplies by the lcm of denominators, divides by the polynomial content,
    then scales so all coefficients are integers with content 1 and the top
    derivative's leading coefficient is positive.
    """
    from gmpy2 import gcd as igcd, mpz
    from sympy.polys.domains import QQ as SQQ

    den = T_RING.one
    for c in coefficients:
        if not c:
            continue
        g = den.gcd(c.den)
        den = den * c.den.quo(g)
    polys = [c.num * den.quo(c.den) if c else T_RING.zero for c in coefficients]
    content = None
    for p in polys:
        if not p:
            continue
        content = p if content is None else content.gcd(p)
        if content.degree() == 0:
            break
    if content is not None and content.degree() > 0:
        polys = [p.quo(content) if p else p for p in polys]

    denom = mpz(1)
    for p in polys:
        for c in poly_to_mpq_list(p):
            if c:
                denom = denom * c.denominator // igcd(denom, c.denominator)
    num_gcd = mpz(0)
    for p in polys:
        for c in poly_to_mpq_list(p):
            if c:
                num_gcd = igcd(num_gcd, c.numerator * (denom // c.denominator))
    scale = mpq(denom, num_gcd) if num_gcd else mpq(1)
    top = next((c for c in reversed(poly_to_mpq_list(polys[-1])) if c), mpq(1))
    if top * scale < 0:
        scale = -scale
    ground = SQQ(scale.numerator, scale.denominator)
    return [p.mul_ground(ground) if p else p for p in polys]


def _falling_factorial(i: int) -> list:
    """a(a-1)...(a-i+1) as ascending mpq coefficient list."""
    poly = [mpq(1)]
    for j in range(i):
        # poly := poly * (a - j)
        nxt = [mpq(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= mpq(j) * c
        poly = nxt
    return _poly_trim(poly)


def _poly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else mpq(0))
                       + (b[i] if i < len(b) else mpq(0)) for i in range(n)])


def _poly_scale(a: list, c) -> list:
    return _poly_trim([x * c for x in a])


def _poly_trim(a: list) -> list:
    while len(a) > 1 and not a[-1]:
        a = a[:-1]
    return a if a else [mpq(0)]


def _poly_eval(a: list, x) -> mpq:
    acc = mpq(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _deflate(a: list, r) -> list:
    """Synthetic division by (x - r), assuming r is a root."""
    out = [mpq(0)] * (len(a) - 1)
    carry = mpq(0)
    for i in range(len(a) - 1, 0, -1):
        carry = a[i] + carry * r
        out[i - 1] = carry
    return _poly_trim(out)


def _cauchy_root_bound(a: list) -> int:
    lead = a[-1]
    if not lead:
        return 0
    m = max(abs(c / lead) for c in a[:-1]) if len(a) > 1 else mpq(0)
    return int(1 + m) + 1
