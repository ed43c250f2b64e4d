"""Exact division, gcd and resultants for multivariate polynomials.

The gcd works recursively: split off the content with respect to a main
variable, run a primitive pseudo-remainder sequence on the primitive parts,
and recurse on the contents.  Over QQ results are normalized to integer
coefficients with content 1 and a positive leading coefficient; over GF(p)
they are monic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any

from ..errors import RingMismatch, UnsupportedField, VariableAbsent, ZeroDivisor, ZeroInput
from ..scalar import FieldElement, PrimeField, Rationals
from .ring import DEGREVLEX, LEX, MonomialOrder, MultiPoly, det, divides, mono_div


def exact_quotient(f: Any, g: Any) -> Any:
    """``f / g`` when ``g`` divides ``f`` exactly; raises ValueError otherwise."""
    if not isinstance(f, MultiPoly):
        return f / g
    if not isinstance(g, MultiPoly):
        return f / g
    if f.ring != g.ring:
        raise RingMismatch("exact_quotient across rings")
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    if f.is_zero():
        return f
    if g.is_constant():
        return f / g
    F = f.ring.field
    lm_g = g.leading_monomial(LEX)
    inv_lc = F.inv(g.terms[lm_g])
    rem = dict(f.terms)
    quot: dict = {}
    g_items = list(g.terms.items())
    while rem:
        m = max(rem, key=LEX.key)
        if not divides(lm_g, m):
            raise ValueError("division is not exact")
        q = mono_div(m, lm_g)
        c = F.mul(rem[m], inv_lc)
        quot[q] = c
        for e, a in g_items:
            k = tuple(x + y for x, y in zip(e, q))
            v = F.sub(rem.get(k, F.zero()), F.mul(c, a))
            if F.is_zero(v):
                rem.pop(k, None)
            else:
                rem[k] = v
    return MultiPoly(f.ring, quot)


def divides_exactly(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        exact_quotient(f, g)
    except ValueError:
        return False
    return True


def _check_field(f: MultiPoly) -> None:
    if not isinstance(f.ring.field, (Rationals, PrimeField)):
        raise UnsupportedField("gcd is implemented over QQ and GF(p)")


def integer_content(f: MultiPoly) -> Fraction:
    """Positive rational c with f/c having coprime integer coefficients."""
    if f.is_zero():
        return Fraction(0)
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in f.terms.values():
        num = math.gcd(num, int(c * den))
    return Fraction(num, den)


def normalize(f: MultiPoly, order: MonomialOrder = DEGREVLEX) -> MultiPoly:
    """Canonical associate: primitive integer with positive lead over QQ, monic over GF(p)."""
    if f.is_zero():
        return f
    if isinstance(f.ring.field, Rationals):
        c = integer_content(f)
        if f.terms[f.leading_monomial(order)] < 0:
            c = -c
        return f / c
    return f.monic(order)


def _main_var(f: MultiPoly, g: MultiPoly) -> int | None:
    for i in range(f.ring.nvars):
        if any(e[i] for e in f.terms) or any(e[i] for e in g.terms):
            return i
    return None


def _coeffs(f: MultiPoly, i: int) -> dict[int, MultiPoly]:
    out: dict[int, dict] = {}
    for e, c in f.terms.items():
        ne = list(e)
        k = ne[i]
        ne[i] = 0
        out.setdefault(k, {})[tuple(ne)] = c
    return {k: MultiPoly(f.ring, t) for k, t in out.items()}


def _content(f: MultiPoly, i: int) -> MultiPoly:
    parts = sorted(_coeffs(f, i).values(), key=len)
    g = parts[0]
    for p in parts[1:]:
        if g.is_constant():
            break
        g = _gcd(g, p)
    return normalize(g)


def _deg(f: MultiPoly, i: int) -> int:
    return max((e[i] for e in f.terms), default=-1)


def _lc(f: MultiPoly, i: int) -> MultiPoly:
    d = _deg(f, i)
    return _coeffs(f, i)[d]


def prem(f: MultiPoly, g: MultiPoly, i: int) -> MultiPoly:
    """Pseudo-remainder of f by g in variable index i."""
    dg = _deg(g, i)
    lc_g = _lc(g, i)
    r = f
    e = [0] * f.ring.nvars
    steps = _deg(f, i) - dg + 1
    while not r.is_zero() and _deg(r, i) >= dg:
        dr = _deg(r, i)
        e[i] = dr - dg
        r = r * lc_g - (_lc(r, i) * g).mul_monomial(tuple(e))
        steps -= 1
    if steps > 0:
        r = r * lc_g**steps
    return r


def _primitive(f: MultiPoly, i: int) -> MultiPoly:
    c = _content(f, i)
    return normalize(exact_quotient(f, c))


def _gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return normalize(g)
    if g.is_zero():
        return normalize(f)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    i = _main_var(f, g)
    if _deg(f, i) == 0:
        return _gcd(f, _content(g, i))
    if _deg(g, i) == 0:
        return _gcd(_content(f, i), g)
    cf, cg = _content(f, i), _content(g, i)
    c = _gcd(cf, cg)
    a = normalize(exact_quotient(f, cf))
    b = normalize(exact_quotient(g, cg))
    if _deg(a, i) < _deg(b, i):
        a, b = b, a
    while True:
        r = prem(a, b, i)
        if r.is_zero():
            break
        if _deg(r, i) == 0:
            b = f.ring.one()
            break
        a, b = b, _primitive(r, i)
    return normalize(c * b)


def gcd_multivariate(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Normalized greatest common divisor of two polynomials over QQ or GF(p)."""
    if f.ring != g.ring:
        raise RingMismatch("gcd across rings")
    _check_field(f)
    if f.is_zero() and g.is_zero():
        raise ZeroInput("gcd(0, 0) is undefined")
    return _gcd(f, g)


def gcd_list(polys: list[MultiPoly]) -> MultiPoly:
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        raise ZeroInput("gcd of zero polynomials")
    g = normalize(nz[0])
    for p in nz[1:]:
        g = gcd_multivariate(g, p)
    return g


def strip_factor(f: MultiPoly, factor: MultiPoly) -> tuple[MultiPoly, int]:
    """Divide out the largest power of ``factor``; return (cofactor, exponent)."""
    if factor.is_constant():
        raise ValueError("cannot strip a constant factor")
    k = 0
    while not f.is_zero():
        try:
            f = exact_quotient(f, factor)
        except ValueError:
            break
        k += 1
    return f, k


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str) -> list[list[MultiPoly]]:
    i = f.ring.index(var)
    m, n = _deg(f, i), _deg(g, i)
    cf, cg = _coeffs(f, i), _coeffs(g, i)
    zero = f.ring.zero()
    size = m + n
    rows = []
    for r in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[r + m - k] = cf.get(k, zero)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[r + n - k] = cg.get(k, zero)
        rows.append(row)
    return rows


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Sylvester resultant of f and g with respect to ``var``."""
    if f.ring != g.ring:
        raise RingMismatch("resultant across rings")
    i = f.ring.index(var)
    if f.is_zero() or g.is_zero() or _deg(f, i) < 1 or _deg(g, i) < 1:
        raise VariableAbsent(f"both polynomials must depend on {var}")
    return det(sylvester_matrix(f, g, var))


def discriminant(f: MultiPoly, var: str) -> MultiPoly:
    """Discriminant in ``var``, normalized so a quadratic A*v^2+B*v+C gives B^2-4AC."""
    i = f.ring.index(var)
    n = _deg(f, i)
    r = resultant(f, f.diff(var), var)
    lc = _lc(f, i)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return exact_quotient(r, lc) * sign


def as_field_element(f: MultiPoly) -> FieldElement:
    if not f.is_constant():
        raise ValueError("not a constant")
    F = f.ring.field
    return FieldElement(F, next(iter(f.terms.values()), F.zero()))
