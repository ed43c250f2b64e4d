"""Division, Groebner bases and ideal operations on :class:`MultiPoly`."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..errors import RingMismatch, UnsupportedField, ZeroDivisor
from ..scalar import PrimeField, Rationals
from . import kernel
from .ring import (
    DEGREVLEX,
    MonomialOrder,
    MultiPoly,
    PolyRing,
    block_order,
    divides,
    mono_div,
    same_ring,
)

DEFAULT_BUDGET = 10**7

# When true, every call to ``divide`` re-checks f == sum(q_i d_i) + r.
CHECK_DIVISION = os.environ.get("BOROCZKY_CHECK_DIVISION", "") not in ("", "0")


def divide(
    f: MultiPoly, divisors: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX
) -> tuple[list[MultiPoly], MultiPoly]:
    """Multivariate division: ``f = sum(q_i * d_i) + r`` with no term of r
    divisible by any ``LT(d_i)``.  Divisors are tried in the given order."""
    R = f.ring
    for d in divisors:
        if d.ring != R:
            raise RingMismatch(f"{d.ring} vs {R}")
        if d.is_zero():
            raise ZeroDivisor("division by the zero polynomial")
    F = R.field
    leads = [(d.leading_monomial(order), d) for d in divisors]
    inv_lcs = [F.inv(d.terms[m]) for m, d in leads]
    quots: list[dict] = [{} for _ in divisors]
    p = dict(f.terms)
    rem: dict = {}
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for idx, (lm, d) in enumerate(leads):
            if divides(lm, m):
                q = mono_div(m, lm)
                t = F.mul(c, inv_lcs[idx])
                quots[idx][q] = F.add(quots[idx].get(q, F.zero()), t)
                for e, a in d.terms.items():
                    k = tuple(x + y for x, y in zip(e, q))
                    v = F.sub(p.get(k, F.zero()), F.mul(t, a))
                    if F.is_zero(v):
                        p.pop(k, None)
                    else:
                        p[k] = v
                break
        else:
            rem[m] = c
            del p[m]
    qs = [MultiPoly(R, {e: c for e, c in q.items() if not F.is_zero(c)}) for q in quots]
    r = MultiPoly(R, rem)
    if CHECK_DIVISION:
        total = r
        for q, d in zip(qs, divisors):
            total = total + q * d
        if total != f:
            raise AssertionError("division identity violated")
    return qs, r


# ----------------------------------------------------------------------
# conversion to the kernel representation
# ----------------------------------------------------------------------


def _mode(R: PolyRing) -> int | None:
    if isinstance(R.field, Rationals):
        return None
    if isinstance(R.field, PrimeField):
        return R.field.p
    raise UnsupportedField(f"Groebner bases are implemented over QQ and GF(p), not {R.field}")


def to_kernel(f: MultiPoly) -> dict:
    mod = _mode(f.ring)
    if mod is not None:
        return dict(f.terms)
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return {e: int(c * den) for e, c in f.terms.items()}


def from_kernel(R: PolyRing, p: dict, order: MonomialOrder, monic: bool = True) -> MultiPoly:
    if not p:
        return R.zero()
    if _mode(R) is not None:
        f = MultiPoly(R, {e: c % R.field.p for e, c in p.items() if c % R.field.p})
    else:
        f = MultiPoly(R, {e: Fraction(c) for e, c in p.items()})
    return f.monic(order) if monic else f


def buchberger(
    generators: Sequence[MultiPoly],
    order: MonomialOrder = DEGREVLEX,
    *,
    degree_bound: int | None = None,
    budget: int | None = DEFAULT_BUDGET,
    progress: Callable[[str], None] | None = None,
) -> list[MultiPoly]:
    """Reduced Groebner basis (monic, sorted by leading monomial, ascending).

    ``degree_bound`` truncates the computation for homogeneous generators: the
    result then reduces every polynomial of degree <= bound to its true normal
    form.  Exceeding ``budget`` reduction steps raises ResourceExceeded.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    R = same_ring(gens)
    mod = _mode(R)
    if degree_bound is not None and not all(g.is_homogeneous() for g in gens):
        raise ValueError("degree-truncated Groebner bases need homogeneous generators")
    polys = [to_kernel(g) for g in gens]
    basis = kernel.groebner(
        polys, order, mod, degree_bound=degree_bound, budget=kernel.Budget(budget), progress=progress
    )
    return [from_kernel(R, p, order) for p in basis]


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX) -> MultiPoly:
    """Normal form of ``f`` modulo a Groebner basis (exact, monic-free scaling)."""
    if not basis:
        return f
    R = same_ring(list(basis) + [f])
    if _mode(R) is None:
        # field-exact path keeps the true normal form (not just up to scalar)
        return divide(f, list(basis), order)[1]
    reds = [kernel.Reducer(to_kernel(g), order) for g in basis]
    scale, rem = kernel.normal_form_keep_scale(to_kernel(f), reds, order, R.field.p)
    return from_kernel(R, rem, order, monic=False)


def reduces_to_zero(
    f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX, budget: int | None = None
) -> bool:
    """Zero test of the normal form, using the fast integer kernel over QQ."""
    if f.is_zero():
        return True
    if not basis:
        return False
    R = same_ring(list(basis) + [f])
    mod = _mode(R)
    reds = [kernel.Reducer(to_kernel(g), order) for g in basis]
    nf = kernel.normal_form(to_kernel(f), reds, order, mod, kernel.Budget(budget))
    return not nf


def is_groebner_basis(basis: Sequence[MultiPoly], order: MonomialOrder = DEGREVLEX) -> bool:
    """Buchberger's S-pair criterion."""
    if not basis:
        return True
    R = same_ring(basis)
    mod = _mode(R)
    reds = [kernel.Reducer(kernel.primitive(to_kernel(g), order, mod), order) for g in basis]
    for i in range(len(reds)):
        for j in range(i + 1, len(reds)):
            s = kernel.s_polynomial(reds[i], reds[j], mod)
            if kernel.normal_form(s, reds, order, mod):
                return False
    return True


# ----------------------------------------------------------------------
# ideals
# ----------------------------------------------------------------------


@dataclass
class IdealPresentation:
    """Generators of an ideal plus a lazily computed reduced Groebner basis."""

    ring: PolyRing
    generators: list[MultiPoly]
    order: MonomialOrder = DEGREVLEX
    gb_cache: list[MultiPoly] | None = field(default=None, repr=False)
    budget: int | None = field(default=DEFAULT_BUDGET, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatch(f"generator in {g.ring}, ideal in {self.ring}")

    @classmethod
    def of(cls, generators: Iterable[MultiPoly], order: MonomialOrder = DEGREVLEX, **kw) -> IdealPresentation:
        gens = list(generators)
        return cls(same_ring(gens), gens, order, **kw)

    def groebner_basis(self, degree_bound: int | None = None) -> list[MultiPoly]:
        if degree_bound is not None:
            return buchberger(self.generators, self.order, degree_bound=degree_bound, budget=self.budget)
        if self.gb_cache is None:
            self.gb_cache = buchberger(self.generators, self.order, budget=self.budget)
        return self.gb_cache

    def contains(self, f: MultiPoly) -> bool:
        return ideal_membership(f, self)

    def is_proper(self) -> bool:
        gb = self.groebner_basis()
        return not any(g.is_constant() and not g.is_zero() for g in gb)

    def same_ideal(self, other: IdealPresentation) -> bool:
        return all(other.contains(g) for g in self.generators) and all(
            self.contains(g) for g in other.generators
        )

    def max_degree(self) -> int:
        return max((g.total_degree() for g in self.generators), default=0)

    def __len__(self) -> int:
        return len(self.generators)


def _ideal(I: IdealPresentation | Sequence[MultiPoly]) -> IdealPresentation:
    if isinstance(I, IdealPresentation):
        return I
    return IdealPresentation.of(I)


def ideal_membership(f: MultiPoly, I: IdealPresentation) -> bool:
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if f.is_zero():
        return True
    if not any(not g.is_zero() for g in I.generators):
        return False
    return reduces_to_zero(f, I.groebner_basis(), I.order)


def ideal_product(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    if I.ring != J.ring:
        raise RingMismatch("ideal product across rings")
    seen = set()
    gens = []
    for f in I.generators:
        for g in J.generators:
            h = f * g
            if h.is_zero():
                continue
            key = frozenset(h.monic().terms.items())
            if key not in seen:
                seen.add(key)
                gens.append(h)
    return IdealPresentation(I.ring, gens, I.order)


def ideal_power(I: IdealPresentation, r: int) -> IdealPresentation:
    if r < 0:
        raise ValueError("negative ideal power")
    result = IdealPresentation(I.ring, [I.ring.one()], I.order)
    for _ in range(r):
        result = ideal_product(result, I)
    return result


def eliminate(I: IdealPresentation, variables: Sequence[str]) -> IdealPresentation:
    """Generators of the elimination ideal ``I ∩ k[remaining variables]``."""
    R = I.ring
    elim = list(variables)
    rest = [v for v in R.variables if v not in elim]
    R2 = PolyRing(tuple(elim + rest), R.field)
    gens = [R2.convert(g) for g in I.generators]
    gb = buchberger(gens, block_order(len(elim)), budget=I.budget)
    k = len(elim)
    keep = [g for g in gb if all(not any(e[:k]) for e in g.terms)]
    R3 = PolyRing(tuple(rest), R.field)
    out = []
    for g in keep:
        out.append(MultiPoly(R3, {e[k:]: c for e, c in g.terms.items()}))
    return IdealPresentation(R3, out, I.order)


def ideal_intersection(I: IdealPresentation, J: IdealPresentation, *, verify: bool = True) -> IdealPresentation:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    if I.ring != J.ring:
        raise RingMismatch("ideal intersection across rings")
    R = I.ring
    t = "_t"
    while t in R.variables:
        t += "_"
    Rt = PolyRing((t,) + R.variables, R.field)
    tt = Rt.gen(t)
    gens = [tt * Rt.convert(f) for f in I.generators] + [
        (1 - tt) * Rt.convert(g) for g in J.generators
    ]
    gb = buchberger(gens, block_order(1), budget=I.budget)
    out = [MultiPoly(R, {e[1:]: c for e, c in g.terms.items()}) for g in gb if all(e[0] == 0 for e in g.terms)]
    result = IdealPresentation(R, out, I.order)
    if verify:
        for g in out:
            if not (I.contains(g) and J.contains(g)):
                raise AssertionError("intersection generator not in both ideals")
    return result
