"""Sparse multivariate polynomials over the fields of :mod:`boroczky.scalar`.

A :class:`MultiPoly` is a dict from exponent tuples to *raw* coefficients of
the ring's field (Fractions over QQ, ints over GF(p)).  Zero coefficients are
never stored.  Monomial orders are separate objects so the same polynomial can
be viewed under degrevlex, lex or a block order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .. import _expr
from ..errors import DivisionByZero, ParseError, RingMismatch, ZeroDivisor
from ..scalar import QQ, FieldDescriptor, FieldElement

Monomial = tuple


# ----------------------------------------------------------------------
# monomial orders
# ----------------------------------------------------------------------


def _revlex_part(e: Sequence[int]) -> tuple:
    return tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order.

    ``name`` is ``"degrevlex"``, ``"lex"`` or ``"block"``; for a block order
    the first ``block`` variables form the elimination block, ordered above
    the rest, with degrevlex inside each block.
    """

    name: str = "degrevlex"
    block: int = 0

    def __post_init__(self):
        if self.name not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.name!r}")
        if self.name == "block" and self.block < 1:
            raise ValueError("block order needs at least one elimination variable")

    def key(self, e: Monomial) -> tuple:
        return _order_key(self, e)

    def heap_key(self, e: Monomial) -> tuple:
        """Key whose *minimum* is the order's *maximum* (for heapq)."""
        return _heap_key(self, e)

    def __str__(self) -> str:
        return f"block({self.block})" if self.name == "block" else self.name


@lru_cache(maxsize=1 << 20)
def _order_key(order: MonomialOrder, e: Monomial) -> tuple:
    if order.name == "degrevlex":
        return (sum(e),) + _revlex_part(e)
    if order.name == "lex":
        return e
    k = order.block
    head, tail = e[:k], e[k:]
    return (sum(head),) + _revlex_part(head) + (sum(tail),) + _revlex_part(tail)


@lru_cache(maxsize=1 << 20)
def _heap_key(order: MonomialOrder, e: Monomial) -> tuple:
    return tuple(-x for x in _order_key(order, e))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


def parse_order(text: str) -> MonomialOrder:
    t = text.strip()
    if t in ("degrevlex", "grevlex", "dp"):
        return DEGREVLEX
    if t in ("lex", "lp"):
        return LEX
    if t.startswith("block(") and t.endswith(")"):
        return block_order(int(t[6:-1]))
    raise ValueError(f"unknown monomial order {text!r}")


# ----------------------------------------------------------------------
# rings
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PolyRing:
    variables: tuple[str, ...]
    field: FieldDescriptor = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        for v in self.variables:
            if not v.isidentifier():
                raise ValueError(f"bad variable name {v!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return self.constant(1)

    def constant(self, c: Any) -> MultiPoly:
        raw = self.field.coerce(c).raw
        if self.field.is_zero(raw):
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: raw})

    def gen(self, name: str) -> MultiPoly:
        i = self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.field.one()})

    def gens(self) -> list[MultiPoly]:
        return [self.gen(v) for v in self.variables]

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def monomial(self, e: Sequence[int], c: Any = 1) -> MultiPoly:
        raw = self.field.coerce(c).raw
        if self.field.is_zero(raw):
            return self.zero()
        return MultiPoly(self, {tuple(e): raw})

    def from_terms(self, terms: Mapping[Monomial, Any]) -> MultiPoly:
        F = self.field
        out = {}
        for e, c in terms.items():
            raw = c.raw if isinstance(c, FieldElement) and c.field == F else F.coerce(c).raw
            if not F.is_zero(raw):
                out[tuple(e)] = raw
        return MultiPoly(self, out)

    def parse(self, text: str) -> MultiPoly:
        symbols = {v: self.gen(v) for v in self.variables}
        for name, g in self.field.generators().items():
            if name not in symbols:
                symbols[name] = self.constant(g)
        val = _expr.evaluate(text, symbols, self.constant)
        return self(val)

    def __call__(self, x: Any) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.ring == self:
                return x
            return self.convert(x)
        if isinstance(x, str):
            return self.parse(x)
        return self.constant(x)

    def convert(self, f: MultiPoly) -> MultiPoly:
        """Map ``f`` into this ring by variable name (and field coercion)."""
        idx = []
        for v in f.ring.variables:
            if v not in self.variables:
                if all(e[f.ring.index(v)] == 0 for e in f.terms):
                    idx.append(None)
                    continue
                raise RingMismatch(f"variable {v} not in {self}")
            idx.append(self.index(v))
        out: dict = {}
        F = self.field
        for e, c in f.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                if k:
                    ne[idx[i]] = k
            raw = F.coerce(FieldElement(f.ring.field, c)).raw
            if not F.is_zero(raw):
                out[tuple(ne)] = raw
        return MultiPoly(self, out)

    def with_field(self, field: FieldDescriptor) -> PolyRing:
        return PolyRing(self.variables, field)

    def __str__(self) -> str:
        return f"{self.field.describe()}[{','.join(self.variables)}]"


# ----------------------------------------------------------------------
# polynomials
# ----------------------------------------------------------------------


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` must not be mutated after creation."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict) -> None:
        self.ring = ring
        self.terms = terms

    # -- structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str | int) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def used_variables(self) -> list[str]:
        return [v for i, v in enumerate(self.ring.variables) if any(e[i] for e in self.terms)]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list[tuple[Monomial, Any]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEGREVLEX) -> FieldElement:
        return FieldElement(self.ring.field, self.terms[self.leading_monomial(order)])

    def leading_term(self, order: MonomialOrder = DEGREVLEX) -> MultiPoly:
        m = self.leading_monomial(order)
        return MultiPoly(self.ring, {m: self.terms[m]})

    def coefficient(self, e: Sequence[int]) -> FieldElement:
        F = self.ring.field
        return FieldElement(F, self.terms.get(tuple(e), F.zero()))

    def monic(self, order: MonomialOrder = DEGREVLEX) -> MultiPoly:
        if not self.terms:
            return self
        return self * self.leading_coefficient(order).inverse()

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other: Any) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.constant(other)
        raise TypeError

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        F = self.ring.field
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for e, c in small.items():
            if e in out:
                s = F.add(out[e], c)
                if F.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return MultiPoly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        F = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = F.mul(c1, c2)
                if e in out:
                    out[e] = F.add(out[e], p)
                else:
                    out[e] = p
        return MultiPoly(self.ring, {e: c for e, c in out.items() if not F.is_zero(c)})

    __rmul__ = __mul__

    def scale(self, c: Any) -> MultiPoly:
        F = self.ring.field
        raw = F.coerce(c).raw
        if F.is_zero(raw):
            return self.ring.zero()
        return MultiPoly(self.ring, {e: F.mul(v, raw) for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            if other.is_zero():
                raise ZeroDivisor("division by the zero polynomial")
            other = FieldElement(self.ring.field, next(iter(other.terms.values())))
        c = self.ring.field.coerce(other)
        if c.is_zero():
            raise DivisionByZero("polynomial divided by zero")
        return self.scale(c.inverse())

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, e: Monomial, c: Any = None) -> MultiPoly:
        F = self.ring.field
        if c is None:
            return MultiPoly(
                self.ring, {tuple(a + b for a, b in zip(m, e)): v for m, v in self.terms.items()}
            )
        raw = F.coerce(c).raw
        return MultiPoly(
            self.ring,
            {tuple(a + b for a, b in zip(m, e)): F.mul(v, raw) for m, v in self.terms.items()},
        )

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.constant(other).terms
        except (TypeError, ValueError):
            return False

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus / evaluation -------------------------------------------
    def diff(self, var: str | int, k: int = 1) -> MultiPoly:
        i = var if isinstance(var, int) else self.ring.index(var)
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                continue
            fall = 1
            for j in range(k):
                fall *= e[i] - j
            ne = list(e)
            ne[i] -= k
            v = F.mul(c, F.from_fraction(Fraction(fall)))
            if not F.is_zero(v):
                out[tuple(ne)] = v
        return MultiPoly(self.ring, out)

    def evaluate(self, values: Sequence[Any] | Mapping[str, Any], field: FieldDescriptor | None = None) -> FieldElement:
        """Evaluate at a point; values may live in an extension of the ring's field."""
        if isinstance(values, Mapping):
            values = [values[v] for v in self.ring.variables]
        if field is None:
            field = next(
                (v.field for v in values if isinstance(v, FieldElement)), self.ring.field
            )
        vals = [field.coerce(v) for v in values]
        total = field.coerce(0)
        powers: dict = {}
        for e, c in self.terms.items():
            term = field.coerce(FieldElement(self.ring.field, c))
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = vals[i] ** k
                    term = term * powers[key]
            total = total + term
        return total

    def subs(self, mapping: Mapping[str, Any]) -> MultiPoly:
        """Substitute polynomials (or constants) for some variables."""
        R = self.ring
        images = []
        for v in R.variables:
            if v in mapping:
                images.append(R(mapping[v]))
            else:
                images.append(R.gen(v))
        total = R.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            term = R.monomial((0,) * R.nvars, FieldElement(R.field, c))
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            total = total + term
        return total

    def coefficients_in(self, var: str) -> dict[int, MultiPoly]:
        """View as a polynomial in ``var``: map degree -> coefficient polynomial."""
        i = self.ring.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: MultiPoly(self.ring, t) for k, t in out.items()}

    # -- text ---------------------------------------------------------------
    def format(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.variables
        parts: list[str] = []
        for e, c in self.sorted_terms(order):
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(names, e) if k
            )
            cs = F.format(c)
            neg = False
            if cs.startswith("-") and not _expr.needs_parens(cs):
                neg, cs = True, cs[1:]
            if _expr.needs_parens(cs):
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.ring}, {self})"

    def __iter__(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(self.terms.items())


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    """All exponent vectors of total degree ``d`` in ``n`` variables, degrevlex-descending."""
    if n == 0:
        return [()] if d == 0 else []
    out = []

    def rec(prefix: list[int], left: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, slots - 1)

    rec([], d, n)
    out.sort(key=DEGREVLEX.key, reverse=True)
    return out


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_mono(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def same_ring(polys: Iterable[MultiPoly]) -> PolyRing:
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise RingMismatch("polynomials from different rings")
    return rings.pop()


def det(matrix: Sequence[Sequence[Any]]) -> Any:
    """Fraction-free (Bareiss) determinant over an integral domain of polynomials.

    Entries must support ``+ - *`` and exact division via :func:`exact_quotient`.
    """
    from .gcd import exact_quotient

    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    M = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(M[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(M[i][k])), None)
            if swap is None:
                return M[0][0] * 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num if prev is None else exact_quotient(num, prev)
        prev = M[k][k]
    result = M[n - 1][n - 1]
    return -result if sign < 0 else result


def _is_zero(x: Any) -> bool:
    if isinstance(x, (MultiPoly, FieldElement)):
        return x.is_zero()
    return x == 0


def parse_poly(text: str, variables: Sequence[str], field: FieldDescriptor = QQ) -> MultiPoly:
    try:
        return PolyRing(tuple(variables), field).parse(text)
    except ParseError:
        raise
