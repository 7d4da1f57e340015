"""Groebner bases with division witnesses over an exact field.

Buchberger's algorithm in grevlex, tracking for every basis element its
expression in the original generators, so that division against the reduced
basis can be back-substituted into exact coordinates s_j with

    p = remainder + sum_j s_j * generator_j.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import (HomogeneousPolynomial, grevlex_key, mono_div, mono_divides,
                   mono_lcm, mono_mul, monomials_of_degree)


@dataclass(frozen=True)
class DivisionWitness:
    """Remainder plus coordinates against the context's original generators."""

    remainder: HomogeneousPolynomial
    coordinates: tuple  # one HomogeneousPolynomial (or zero) per generator

    def check(self, p: HomogeneousPolynomial, generators) -> bool:
        """Exact identity p == remainder + sum coordinates[j]*generators[j]."""
        acc = self.remainder
        for s, g in zip(self.coordinates, generators):
            if s and g:
                acc = acc + s * g
        return acc == p


class GroebnerContext:
    """Reduced grevlex Groebner basis of an ideal plus generator bookkeeping.

    basis[k] is monic; reps[k] holds polynomials r_{k,j} with
    basis[k] == sum_j r_{k,j} * generators[j], exactly.
    """

    def __init__(self, generators, order="grevlex"):
        if order != "grevlex":
            raise ValueError(f"unsupported monomial order {order!r}")
        generators = [g for g in generators]
        if not generators:
            raise ValueError("no generators")
        self.order = order
        self.num_vars = generators[0].num_vars
        self.field = generators[0].field
        self.generators = tuple(generators)
        self.basis, self.reps = _buchberger(generators)
        self.leading = [g.leading_monomial() for g in self.basis]

    def reduce_with_witness(self, p: HomogeneousPolynomial) -> DivisionWitness:
        """Normal form of p plus exact coordinates against the generators."""
        if p.num_vars != self.num_vars:
            raise ValueError("variable count mismatch")
        rem, quotients = _divide(p, self.basis, self.leading)
        coords = [HomogeneousPolynomial.zero(self.num_vars, p.field)
                  for _ in self.generators]
        for k, u in enumerate(quotients):
            if not u:
                continue
            for j, r in enumerate(self.reps[k]):
                if r:
                    coords[j] = coords[j] + u * r
        return DivisionWitness(rem, tuple(coords))

    def normal_form(self, p: HomogeneousPolynomial) -> HomogeneousPolynomial:
        rem, _ = _divide(p, self.basis, self.leading, want_quotients=False)
        return rem

    def is_standard_monomial(self, mono: tuple) -> bool:
        return not any(mono_divides(lt, mono) for lt in self.leading)

    def standard_monomials(self, degree: int) -> list:
        """Monomials of the degree outside the leading-term ideal, grevlex-descending."""
        return [m for m in monomials_of_degree(self.num_vars, degree)
                if self.is_standard_monomial(m)]


def groebner_basis(generators, order="grevlex") -> GroebnerContext:
    return GroebnerContext(generators, order)


def jacobian_context(f: HomogeneousPolynomial) -> GroebnerContext:
    """Groebner context of the Jacobian ideal (partials of f, in order)."""
    partials = [f.partial(j) for j in range(f.num_vars)]
    return GroebnerContext(partials)


def is_smooth_hypersurface(f: HomogeneousPolynomial) -> bool:
    """True iff Z(f) in P^{n+1} is smooth.

    Checks that the Jacobian ring has no standard monomials just above the
    socle degree (n+2)(d-2); for a smooth hypersurface the Jacobian ring is
    Artinian with socle degree exactly there.
    """
    if f.is_zero():
        raise ValueError("zero polynomial does not define a hypersurface")
    nv, d = f.num_vars, f.degree
    ctx = jacobian_context(f)
    if not ctx.basis:
        return False
    test_degree = max(nv * (d - 2) + 1, 0)
    return not ctx.standard_monomials(test_degree)


# -- internals --------------------------------------------------------------

def _divide(p, basis, leading, want_quotients=True):
    """Multivariate division: p = sum quotients[k]*basis[k] + remainder."""
    nv, field = p.num_vars, p.field
    rem_terms = {}
    quotients = [HomogeneousPolynomial.zero(nv, field) for _ in basis] \
        if want_quotients else None
    work = dict(p.terms)
    while work:
        m = max(work, key=grevlex_key)
        c = work.pop(m)
        for k, lt in enumerate(leading):
            if mono_divides(lt, m):
                g = basis[k]
                q_mono = mono_div(m, lt)
                q_coeff = c / g.terms[lt]
                for gm, gc in g.terms.items():
                    if gm == lt:
                        continue
                    mm = mono_mul(gm, q_mono)
                    s = work.get(mm, field.zero) - q_coeff * gc
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                if want_quotients:
                    quotients[k] = quotients[k] + HomogeneousPolynomial.monomial(
                        nv, q_mono, q_coeff, field)
                break
        else:
            rem_terms[m] = c
    rem = HomogeneousPolynomial(nv, rem_terms, field, _checked=True)
    return rem, quotients


def _buchberger(generators):
    """Reduced Groebner basis with representation tracking.

    Returns (basis, reps): basis monic, interreduced, sorted by ascending
    leading monomial; reps[k][j] expresses basis[k] in generators[j].
    """
    nv = generators[0].num_vars
    field = generators[0].field
    ngen = len(generators)

    def unit_rep(j):
        rep = [HomogeneousPolynomial.zero(nv, field) for _ in range(ngen)]
        rep[j] = HomogeneousPolynomial.monomial(nv, (0,) * nv, field.one, field)
        return rep

    work = []  # (poly, rep) with poly nonzero
    for j, g in enumerate(generators):
        if g:
            work.append((g, unit_rep(j)))
    if not work:
        return [], []

    basis = [w[0] for w in work]
    reps = [w[1] for w in work]
    leading = [g.leading_monomial() for g in basis]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    while pairs:
        # normal selection: smallest lcm degree first, then deterministic
        i, j = min(pairs, key=lambda ij: (
            sum(mono_lcm(leading[ij[0]], leading[ij[1]])), ij))
        pairs.discard((i, j))
        lt_i, lt_j = leading[i], leading[j]
        lcm = mono_lcm(lt_i, lt_j)
        if all(a + b == c for a, b, c in zip(lt_i, lt_j, lcm)):
            continue  # coprime leading terms: S-polynomial reduces to zero
        gi, gj = basis[i], basis[j]
        mi, mj = mono_div(lcm, lt_i), mono_div(lcm, lt_j)
        ci = field.inv(gi.terms[lt_i])
        cj = field.inv(gj.terms[lt_j])
        s_poly = gi.mul_term(mi, ci) - gj.mul_term(mj, cj)
        rem, quotients = _divide(s_poly, basis, leading)
        if not rem:
            continue
        rep = [HomogeneousPolynomial.zero(nv, field) for _ in range(ngen)]
        for k in range(ngen):
            acc = reps[i][k].mul_term(mi, ci) - reps[j][k].mul_term(mj, cj)
            for b, u in enumerate(quotients):
                if u and reps[b][k]:
                    acc = acc - u * reps[b][k]
            rep[k] = acc
        new_index = len(basis)
        basis.append(rem)
        reps.append(rep)
        leading.append(rem.leading_monomial())
        pairs.update((new_index, b) for b in range(new_index))

    return _interreduce(basis, reps, nv, field)


def _interreduce(basis, reps, nv, field):
    """Minimalize and tail-reduce, keeping representations consistent."""
    # drop elements whose leading monomial is divisible by another's
    order = sorted(range(len(basis)),
                   key=lambda k: grevlex_key(basis[k].leading_monomial()))
    keep = []
    for k in order:
        lt = basis[k].leading_monomial()
        if not any(mono_divides(basis[m].leading_monomial(), lt) for m in keep):
            keep.append(k)
    basis = [basis[k] for k in keep]
    reps = [reps[k] for k in keep]

    # make monic
    for k, g in enumerate(basis):
        c = field.inv(g.leading_coeff())
        if c != field.one:
            basis[k] = g.scale(c)
            reps[k] = [r.scale(c) for r in reps[k]]

    # tail-reduce each element against the others until stable
    changed = True
    while changed:
        changed = False
        for k in range(len(basis)):
            others = basis[:k] + basis[k + 1:]
            leads = [g.leading_monomial() for g in others]
            rem, quotients = _divide(basis[k], others, leads)
            if rem != basis[k]:
                changed = True
                rep = list(reps[k])
                other_reps = reps[:k] + reps[k + 1:]
                for b, u in enumerate(quotients):
                    if u:
                        for j in range(len(rep)):
                            if other_reps[b][j]:
                                rep[j] = rep[j] - u * other_reps[b][j]
                basis[k] = rem
                reps[k] = rep

    order = sorted(range(len(basis)),
                   key=lambda k: grevlex_key(basis[k].leading_monomial()))
    return [basis[k] for k in order], [reps[k] for k in order]
