"""Pole-order-graded rational forms and the Griffiths-Dwork reduction.

A PoleForm stores p_1, ..., p_r with the form sum_l p_l * Omega / f^l; the
reduction repeatedly replaces the top numerator by its Jacobian-ideal normal
form and pushes the divergence of the division witness one pole order down,
which changes the form only by exact forms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from .groebner import GroebnerContext, is_smooth_hypersurface, jacobian_context
from .poly import HomogeneousPolynomial, grevlex_key, monomials_of_degree


class PoleForm:
    """Rational (n+1)-form sum_l numerators[l-1] * Omega / f^l."""

    __slots__ = ("denominator_poly", "numerators")

    def __init__(self, denominator_poly: HomogeneousPolynomial, numerators):
        self.denominator_poly = denominator_poly
        numerators = list(numerators)
        while numerators and numerators[-1].is_zero():
            numerators.pop()
        d = denominator_poly.degree
        nv = denominator_poly.num_vars
        for i, p in enumerate(numerators):
            if p and p.degree != d * (i + 1) - nv:
                raise ValueError(
                    f"numerator at pole order {i + 1} has degree {p.degree}, "
                    f"expected {d * (i + 1) - nv}")
        self.numerators = numerators

    @classmethod
    def single(cls, numerator: HomogeneousPolynomial,
               pole_order: int, denominator: HomogeneousPolynomial) -> "PoleForm":
        nv = denominator.num_vars
        nums = [HomogeneousPolynomial.zero(nv, numerator.field)
                for _ in range(pole_order - 1)] + [numerator]
        return cls(denominator, nums)

    @property
    def pole_order(self) -> int:
        return len(self.numerators)

    def is_zero(self) -> bool:
        return not self.numerators

    def numerator_at(self, ell: int) -> HomogeneousPolynomial:
        if 1 <= ell <= len(self.numerators):
            return self.numerators[ell - 1]
        return HomogeneousPolynomial.zero(self.denominator_poly.num_vars,
                                          self.denominator_poly.field)

    def __add__(self, other: "PoleForm") -> "PoleForm":
        if self.denominator_poly != other.denominator_poly:
            raise ValueError("forms over different denominators")
        r = max(len(self.numerators), len(other.numerators))
        nums = [self.numerator_at(l) + other.numerator_at(l) for l in range(1, r + 1)]
        return PoleForm(self.denominator_poly, nums)

    def scale(self, c) -> "PoleForm":
        return PoleForm(self.denominator_poly,
                        [p.scale(c) for p in self.numerators])

    def __eq__(self, other):
        if not isinstance(other, PoleForm):
            return NotImplemented
        return (self.denominator_poly == other.denominator_poly
                and self.numerators == other.numerators)

    def __repr__(self):
        if self.is_zero():
            return "PoleForm(0)"
        bits = [f"[{p}]/f^{l + 1}" for l, p in enumerate(self.numerators) if p]
        return "PoleForm(" + " + ".join(bits) + ")"


def gd_step(form: PoleForm, ctx: GroebnerContext) -> PoleForm:
    """One reduction step at the top pole order r >= 2.

    Replaces the top numerator p_r by its normal form q_r and adds
    q_{r-1} = (1/(r-1)) sum_j d(s_j)/dx_j at order r-1, where
    p_r - q_r = sum_j s_j * df/dx_j.
    """
    r = form.pole_order
    if r < 2:
        raise ValueError("gd_step needs pole order >= 2")
    fld = form.denominator_poly.field
    wit = ctx.reduce_with_witness(form.numerators[-1])
    nums = list(form.numerators)
    nums[-1] = wit.remainder
    nv = form.denominator_poly.num_vars
    div = HomogeneousPolynomial.zero(nv, fld)
    for j, s in enumerate(wit.coordinates):
        if s:
            div = div + s.partial(j)
    correction = div.scale(fld.inv(fld.from_int(r - 1)))
    nums[r - 2] = nums[r - 2] + correction
    return PoleForm(form.denominator_poly, nums)


def gd_reduce(form: PoleForm, ctx: GroebnerContext) -> PoleForm:
    """Full Griffiths-Dwork reduction: all numerators in normal form.

    For smooth denominators the result has pole order at most n+1, since
    normal forms vanish above the socle degree of the Jacobian ring.
    """
    if form.is_zero():
        return form
    nums = list(form.numerators)
    fld = form.denominator_poly.field
    nv = form.denominator_poly.num_vars
    for r in range(len(nums), 1, -1):
        p = nums[r - 1]
        if p.is_zero():
            continue
        wit = ctx.reduce_with_witness(p)
        nums[r - 1] = wit.remainder
        div = HomogeneousPolynomial.zero(nv, fld)
        for j, s in enumerate(wit.coordinates):
            if s:
                div = div + s.partial(j)
        nums[r - 2] = nums[r - 2] + div.scale(fld.inv(fld.from_int(r - 1)))
    return PoleForm(form.denominator_poly, nums)


@dataclass(frozen=True)
class ResidueBasisEntry:
    numerator: HomogeneousPolynomial
    pole_order: int


@dataclass(frozen=True)
class ResidueBasis:
    """Numerator/pole-order pairs whose residues form a cohomology basis."""

    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def pole_orders(self):
        return [e.pole_order for e in self.entries]

    def classical_count(self, n: int) -> int:
        """Entries of pole order <= ceil(n/2) (a prefix, by ordering)."""
        cutoff = math.ceil(n / 2)
        return sum(1 for e in self.entries if e.pole_order <= cutoff)


def middle_betti(n: int, d: int) -> int:
    """Rank of the middle homology of a smooth degree-d hypersurface in P^{n+1}."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    total = sum((-1) ** i * math.comb(n + 2, i) * d ** (n + 1 - i)
                for i in range(n + 1))
    return total + (-1) ** (n + 1) * 2 * math.ceil(n / 2)


def residue_basis(f: HomogeneousPolynomial,
                  ctx: GroebnerContext | None = None) -> ResidueBasis:
    """Standard-monomial residue basis, ascending pole order, grevlex within."""
    if ctx is None:
        if not is_smooth_hypersurface(f):
            raise ValueError("hypersurface is singular")
        ctx = jacobian_context(f)
    nv, d = f.num_vars, f.degree
    n = nv - 2
    entries = []
    for ell in range(1, n + 2):
        s = d * ell - nv
        if s < 0:
            continue
        for m in ctx.standard_monomials(s):
            entries.append(ResidueBasisEntry(
                HomogeneousPolynomial.monomial(nv, m, f.field.one, f.field), ell))
    return ResidueBasis(tuple(entries))


def form_of_entry(entry: ResidueBasisEntry,
                  f: HomogeneousPolynomial) -> PoleForm:
    return PoleForm.single(entry.numerator, entry.pole_order, f)


def simultaneous_residue_basis(fX: HomogeneousPolynomial,
                               fY: HomogeneousPolynomial,
                               seed: int = 0) -> ResidueBasis:
    """Polynomials descending to bases of both Jacobian-ring graded pieces.

    Greedy: standard monomials of fX first, then other monomials, then
    binomial repairs, smallest in grevlex last; a candidate is accepted when
    it enlarges the span in both quotients at once.
    """
    if fX.num_vars != fY.num_vars or fX.degree != fY.degree:
        raise ValueError("hypersurfaces of different degree or dimension")
    if not is_smooth_hypersurface(fX) or not is_smooth_hypersurface(fY):
        raise ValueError("hypersurface is singular")
    if fX == fY:
        return residue_basis(fX)
    ctxX = jacobian_context(fX)
    ctxY = jacobian_context(fY)
    nv, d = fX.num_vars, fX.degree
    n = nv - 2
    rng = random.Random(seed)
    entries = []
    for ell in range(1, n + 2):
        s = d * ell - nv
        if s < 0:
            continue
        stdX = ctxX.standard_monomials(s)
        stdY = ctxY.standard_monomials(s)
        if len(stdX) != len(stdY):
            raise ValueError("graded pieces of different dimension; "
                             "input likely singular")
        k = len(stdX)
        if k == 0:
            continue
        ech_x = _Echelon()
        ech_y = _Echelon()
        chosen = []

        def try_candidate(p):
            vx = _nf_vector(p, ctxX)
            vy = _nf_vector(p, ctxY)
            if ech_x.would_grow(vx) and ech_y.would_grow(vy):
                ech_x.add(vx)
                ech_y.add(vy)
                chosen.append(p)
                return True
            return False

        all_monos = list(monomials_of_degree(nv, s))
        candidates = [HomogeneousPolynomial.monomial(nv, m, fX.field.one, fX.field)
                      for m in stdX]
        candidates += [HomogeneousPolynomial.monomial(nv, m, fX.field.one, fX.field)
                       for m in all_monos if m not in set(stdX)]
        for p in candidates:
            if len(chosen) == k:
                break
            try_candidate(p)
        if len(chosen) < k:
            for m1 in stdX:
                if len(chosen) == k:
                    break
                for m2 in all_monos:
                    if m2 == m1:
                        continue
                    p = HomogeneousPolynomial.from_int_terms(
                        nv, {m1: 1, m2: 1}, fX.field)
                    if try_candidate(p) and len(chosen) == k:
                        break
        tries = 0
        while len(chosen) < k and tries < 500:
            tries += 1
            terms = {m: rng.randint(-3, 3) for m in rng.sample(all_monos,
                                                               min(3, len(all_monos)))}
            terms = {m: c for m, c in terms.items() if c}
            if not terms:
                continue
            try_candidate(HomogeneousPolynomial.from_int_terms(nv, terms, fX.field))
        if len(chosen) < k:
            raise RuntimeError("failed to complete a simultaneous residue basis")
        for p in chosen:
            entries.append(ResidueBasisEntry(p, ell))
    return ResidueBasis(tuple(entries))


def express_in_basis(form: PoleForm, basis: ResidueBasis,
                     ctx: GroebnerContext) -> list:
    """Coefficients a_i with gd_reduce(form) == sum a_i * reduced basis forms.

    Exact linear solve over the coefficient field; raises if the reduced form
    lies outside the span (invalid basis or singular hypersurface).
    """
    f = form.denominator_poly
    fld = f.field
    target = _form_vector(gd_reduce(form, ctx))
    cols = []
    for e in basis:
        bf = PoleForm.single(e.numerator, e.pole_order, f)
        cols.append(_form_vector(gd_reduce(bf, ctx)))
    keys = set(target)
    for c in cols:
        keys.update(c)
    keys = sorted(keys, key=lambda lm: (lm[0], grevlex_key(lm[1])))
    nrows, ncols = len(keys), len(cols)
    mat = [[cols[j].get(key, fld.zero) for j in range(ncols)] for key in keys]
    vec = [target.get(key, fld.zero) for key in keys]
    sol = _solve_exact(mat, vec, nrows, ncols, fld)
    if sol is None:
        raise ValueError("form is not in the span of the residue basis")
    return sol


# -- internals --------------------------------------------------------------

class _Echelon:
    """Incremental echelon form over an exact field, vectors as mono dicts."""

    def __init__(self):
        self.pivots = []  # (pivot monomial key, reduced vector dict)

    def _reduce(self, v: dict) -> dict:
        v = dict(v)
        for key, w in self.pivots:
            c = v.get(key)
            if c:
                for m, x in w.items():
                    s = v.get(m)
                    s = (-c * x) if s is None else s - c * x
                    if s:
                        v[m] = s
                    else:
                        v.pop(m, None)
        return v

    def would_grow(self, v: dict) -> bool:
        return bool(self._reduce(v))

    def add(self, v: dict) -> bool:
        v = self._reduce(v)
        if not v:
            return False
        key = max(v, key=grevlex_key)
        c = v[key]
        v = {m: x / c for m, x in v.items()}
        self.pivots.append((key, v))
        return True


def _nf_vector(p: HomogeneousPolynomial, ctx: GroebnerContext) -> dict:
    return dict(ctx.normal_form(p).terms)


def _form_vector(form: PoleForm) -> dict:
    out = {}
    for i, p in enumerate(form.numerators):
        for m, c in p.terms.items():
            out[(i + 1, m)] = c
    return out


def _solve_exact(mat, vec, nrows, ncols, fld):
    """Solve mat * x = vec over the field; None if inconsistent."""
    aug = [row[:] + [vec[i]] for i, row in enumerate(mat)]
    piv_cols = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = fld.inv(aug[r][c])
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f_ = aug[i][c]
                aug[i] = [a - f_ * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    sol = [fld.zero] * ncols
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][ncols]
    return sol
