"""Exact arithmetic in a tower of fields.

Five kinds of field are supported, and each may sit on top of another:

* :class:`Rationals`           -- reduced :class:`fractions.Fraction` values
* :class:`PrimeField`          -- residues in ``[0, p)``
* :class:`QuadExt`             -- pairs ``(u, v)`` meaning ``u + v*sqrt(d)``
* :class:`FunctionField`       -- reduced fractions of univariate polynomials
* :class:`QuotientExt`         -- remainders modulo an irreducible polynomial

Descriptors are frozen dataclasses and therefore hashable; two descriptors
compare equal exactly when they describe the same field.  Every descriptor
works on *raw* values (Fractions, ints, tuples) through ``add``/``mul``/...
and wraps them in :class:`FieldElement` for operator-based use.  The raw
representation is always canonical, so ``x == y`` is a plain tuple compare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from . import _expr
from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    InvalidField,
    ParseError,
    UnsupportedField,
)

Poly = tuple  # univariate polynomial: tuple of raw coefficients, low degree first


class FieldElement:
    """An element of a field, carrying its descriptor."""

    __slots__ = ("field", "raw")

    def __init__(self, field: FieldDescriptor, raw: Any) -> None:
        self.field = field
        self.raw = raw

    def _other(self, other: Any) -> Any:
        try:
            return self.field.coerce(other).raw
        except (DescriptorMismatch, ParseError):
            raise
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.raw, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.raw))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        F = self.field
        base = self.raw
        if n < 0:
            base, n = F.inv(base), -n
        result = F.one()
        while n:
            if n & 1:
                result = F.mul(result, base)
            n >>= 1
            if n:
                base = F.mul(base, base)
        return FieldElement(F, result)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def is_one(self) -> bool:
        return self.raw == self.field.one()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, FieldElement) and other.field == self.field:
            return self.raw == other.raw
        try:
            return self.raw == self.field.coerce(other).raw
        except (TypeError, ValueError):
            return False

    def __hash__(self) -> int:
        return hash(self.raw)

    def __str__(self) -> str:
        return self.field.format(self.raw)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.describe()}, {self})"

    def sqrt(self) -> FieldElement | None:
        """Square root inside the field, or None."""
        return is_square(self)


class FieldDescriptor:
    """Common machinery; subclasses implement the raw operations."""

    kind: str = "abstract"

    # -- raw interface (overridden) ------------------------------------
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def is_zero(self, x: Any) -> bool:
        return x == self.zero()

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, x, y):
        if self.is_zero(y):
            raise DivisionByZero("division by zero in " + self.describe())
        return self.mul(x, self.inv(y))

    def embed(self, b: Any) -> Any:
        """Raw value of the image of a raw base-field value."""
        raise NotImplementedError

    def format(self, x: Any) -> str:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def generators(self) -> dict[str, FieldElement]:
        """Named generators usable in parsed expressions (whole tower)."""
        if self.base is None:
            return {}
        return {k: self(v) for k, v in self.base.generators().items()}

    @property
    def characteristic(self) -> int:
        return self.prime_field().characteristic

    def prime_field(self) -> FieldDescriptor:
        f = self
        while f.base is not None:
            f = f.base
        return f

    # -- element construction ------------------------------------------
    def from_fraction(self, q: Fraction) -> Any:
        return self.embed(self.base.from_fraction(q))

    def coerce(self, x: Any) -> FieldElement:
        """Turn ints, Fractions, strings or elements of a subfield into elements."""
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            if self.base is None:
                raise DescriptorMismatch(
                    f"{x.field.describe()} element used in {self.describe()}"
                )
            return FieldElement(self, self.embed(self.base.coerce(x).raw))
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, (int, Fraction)):
            return FieldElement(self, self.from_fraction(Fraction(x)))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.describe()}")

    __call__ = coerce

    def element(self, raw: Any) -> FieldElement:
        return FieldElement(self, raw)

    def parse(self, text: str) -> FieldElement:
        val = _expr.evaluate(text, self.generators(), lambda n: self.coerce(n))
        return self.coerce(val)

    def __str__(self) -> str:
        return self.describe()

    def is_square_raw(self, x: Any) -> Any | None:
        raise UnsupportedField(f"square test not available over {self.describe()}")


# ----------------------------------------------------------------------
# univariate polynomial helpers (coefficients are raw values of ``F``)
# ----------------------------------------------------------------------


def _trim(F: FieldDescriptor, c: Iterable) -> Poly:
    c = list(c)
    while c and F.is_zero(c[-1]):
        c.pop()
    return tuple(c)


def _padd(F, p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = F.add(out[i], c)
    return _trim(F, out)


def _pneg(F, p: Poly) -> Poly:
    return tuple(F.neg(c) for c in p)


def _psub(F, p: Poly, q: Poly) -> Poly:
    return _padd(F, p, _pneg(F, q))


def _pscale(F, p: Poly, s) -> Poly:
    if F.is_zero(s):
        return ()
    return tuple(F.mul(c, s) for c in p)


def _pmul(F, p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    if len(p) == 1:
        return _pscale(F, q, p[0])
    if len(q) == 1:
        return _pscale(F, p, q[0])
    out = [F.zero()] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if F.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return _trim(F, out)


def _pdivmod(F, p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise DivisionByZero("polynomial division by zero")
    if len(q) == 1:
        return _pscale(F, p, F.inv(q[0])), ()
    rem = list(p)
    dq = len(q) - 1
    inv_lc = F.inv(q[-1])
    quot = [F.zero()] * max(len(p) - dq, 0)
    while len(rem) - 1 >= dq:
        c = F.mul(rem[-1], inv_lc)
        shift = len(rem) - 1 - dq
        quot[shift] = c
        for i, b in enumerate(q):
            rem[shift + i] = F.sub(rem[shift + i], F.mul(c, b))
        rem = list(_trim(F, rem[:-1]))
    return _trim(F, quot), _trim(F, rem)


def _pmonic(F, p: Poly) -> Poly:
    if not p or p[-1] == F.one():
        return p
    return _pscale(F, p, F.inv(p[-1]))


def _pgcd(F, p: Poly, q: Poly) -> Poly:
    """Monic gcd (zero only when both inputs are zero)."""
    while q:
        if len(q) == 1:
            return (F.one(),)
        p, q = q, _pdivmod(F, p, q)[1]
    return _pmonic(F, p)


def _pxgcd(F, p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*p + t*q = g monic."""
    r0, r1 = p, q
    s0, s1 = (F.one(),), ()
    t0, t1 = (), (F.one(),)
    while r1:
        quo, rem = _pdivmod(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(F, s0, _pmul(F, quo, s1))
        t0, t1 = t1, _psub(F, t0, _pmul(F, quo, t1))
    if not r0:
        return (), (), ()
    c = F.inv(r0[-1])
    return _pscale(F, r0, c), _pscale(F, s0, c), _pscale(F, t0, c)


def _ppow_mod(F, base: Poly, e: int, mod: Poly) -> Poly:
    result: Poly = (F.one(),)
    base = _pdivmod(F, base, mod)[1]
    while e:
        if e & 1:
            result = _pdivmod(F, _pmul(F, result, base), mod)[1]
        e >>= 1
        if e:
            base = _pdivmod(F, _pmul(F, base, base), mod)[1]
    return result


def _pformat(F, p: Poly, var: str) -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if F.is_zero(c):
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = F.format(c)
        if _expr.needs_parens(cs):
            cs = f"({cs})"
        if mono:
            if cs == "1":
                term = mono
            elif cs == "-1":
                term = "-" + mono
            else:
                term = f"{cs}*{mono}"
        else:
            term = cs
        if parts:
            parts.append(" - " + term[1:] if term.startswith("-") else " + " + term)
        else:
            parts.append(term)
    return "".join(parts)


def _psqrt(F, p: Poly) -> Poly | None:
    """Square root of a univariate polynomial, if one exists over ``F``."""
    if not p:
        return ()
    n = len(p) - 1
    if n % 2:
        return None
    lead = F.is_square_raw(p[-1])
    if lead is None:
        return None
    if n == 0:
        return (lead,)
    if F.characteristic == 2:
        raise UnsupportedField("polynomial square roots need odd characteristic")
    m = n // 2
    q = [F.zero()] * (m + 1)
    q[m] = lead
    two_lead_inv = F.inv(F.add(lead, lead))
    for k in range(1, m + 1):
        # coefficient of x^(n-k) in q^2 = 2*q[m]*q[m-k] + sum over known entries
        acc = p[n - k]
        for i in range(m - k + 1, m):
            j = n - k - i
            if m - k < j <= m:
                acc = F.sub(acc, F.mul(q[i], q[j]))
        q[m - k] = F.mul(acc, two_lead_inv)
    q = _trim(F, q)
    return q if _pmul(F, q, q) == p else None


# ----------------------------------------------------------------------
# concrete descriptors
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Rationals(FieldDescriptor):
    kind = "Rationals"
    base = None

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def is_zero(self, x):
        return x == 0

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("division by zero in QQ")
        return 1 / x

    def div(self, x, y):
        if y == 0:
            raise DivisionByZero("division by zero in QQ")
        return x / y

    def from_fraction(self, q):
        return Fraction(q)

    @property
    def characteristic(self) -> int:
        return 0

    def format(self, x):
        return str(x)

    def describe(self):
        return "QQ"

    def is_square_raw(self, x):
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None


QQ = Rationals()


@dataclass(frozen=True)
class PrimeField(FieldDescriptor):
    p: int

    kind = "PrimeField"
    base = None

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise InvalidField(f"GF({self.p}): modulus is not prime")

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_zero(self, x):
        return x == 0

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise DivisionByZero(f"division by zero in GF({self.p})")
        return pow(x, -1, self.p)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise DivisionByZero(f"{q} has no image in GF({self.p})")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    @property
    def characteristic(self) -> int:
        return self.p

    def format(self, x):
        return str(x)

    def describe(self):
        return f"GF({self.p})"

    def is_square_raw(self, x):
        x %= self.p
        if x == 0:
            return 0
        r = sqrt_mod(x, self.p)
        return None if r is None else int(r)


def squarefree_part(n: int) -> tuple[int, int]:
    """Write ``n = k**2 * s`` with ``s`` square-free; return ``(s, k)``."""
    if n == 0:
        raise ValueError("zero has no square-free part")
    sign = -1 if n < 0 else 1
    s, k = sign, 1
    for prime, e in factorint(abs(n)).items():
        k *= prime ** (e // 2)
        if e % 2:
            s *= prime
    return s, k


@dataclass(frozen=True)
class QuadExt(FieldDescriptor):
    """``base(sqrt(d))``; over QQ the radicand is normalized to a square-free integer."""

    base: FieldDescriptor
    d: Any  # raw base value

    kind = "QuadExt"

    def __post_init__(self):
        d = self.d
        if isinstance(d, FieldElement):
            d = self.base.coerce(d).raw
        elif isinstance(d, (int, Fraction, str)):
            d = self.base.coerce(d).raw
        if isinstance(self.base, Rationals):
            q = Fraction(d)
            if q == 0:
                raise InvalidField("radicand must be nonzero")
            s, _ = squarefree_part(q.numerator * q.denominator)
            if s == 1:
                raise InvalidField(f"{q} is a square in QQ")
            d = Fraction(s)
        else:
            if self.base.is_zero(d):
                raise InvalidField("radicand must be nonzero")
            try:
                root = self.base.is_square_raw(d)
            except UnsupportedField as exc:
                raise InvalidField(
                    f"cannot certify that {self.base.format(d)} is a non-square"
                ) from exc
            if root is not None:
                raise InvalidField(f"{self.base.format(d)} is a square in the base")
            if self.base.characteristic == 2:
                raise InvalidField("quadratic extensions in characteristic 2 are unsupported")
        object.__setattr__(self, "d", d)

    def zero(self):
        return (self.base.zero(), self.base.zero())

    def one(self):
        return (self.base.one(), self.base.zero())

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def add(self, x, y):
        B = self.base
        return (B.add(x[0], y[0]), B.add(x[1], y[1]))

    def sub(self, x, y):
        B = self.base
        return (B.sub(x[0], y[0]), B.sub(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        B = self.base
        u = B.add(B.mul(x[0], y[0]), B.mul(self.d, B.mul(x[1], y[1])))
        v = B.add(B.mul(x[0], y[1]), B.mul(x[1], y[0]))
        return (u, v)

    def norm_raw(self, x):
        B = self.base
        return B.sub(B.mul(x[0], x[0]), B.mul(self.d, B.mul(x[1], x[1])))

    def inv(self, x):
        if self.is_zero(x):
            raise DivisionByZero("division by zero in " + self.describe())
        B = self.base
        n = B.inv(self.norm_raw(x))
        return (B.mul(x[0], n), B.neg(B.mul(x[1], n)))

    def embed(self, b):
        return (b, self.base.zero())

    def conjugate(self, x: FieldElement) -> FieldElement:
        x = self.coerce(x)
        return FieldElement(self, (x.raw[0], self.base.neg(x.raw[1])))

    def norm(self, x: FieldElement) -> FieldElement:
        return FieldElement(self.base, self.norm_raw(self.coerce(x).raw))

    def gen(self) -> FieldElement:
        """The element ``sqrt(d)``."""
        return FieldElement(self, (self.base.zero(), self.base.one()))

    def sqrt(self, x: Any) -> FieldElement:
        """Square root of a base element ``x`` inside this field."""
        b = self.base.coerce(x).raw
        r = self.base.is_square_raw(b)
        if r is not None:
            return FieldElement(self, (r, self.base.zero()))
        r = self.base.is_square_raw(self.base.div(b, self.d))
        if r is None:
            raise ValueError(f"{self.base.format(b)} has no square root in {self.describe()}")
        return FieldElement(self, (self.base.zero(), r))

    def _root_text(self) -> str:
        return f"sqrt({self.base.format(self.d)})"

    def generators(self):
        gens = super().generators()
        gens[self._root_text()] = self.gen()
        return gens

    def format(self, x):
        B = self.base
        u, v = x
        if B.is_zero(v):
            return B.format(u)
        root = self._root_text()
        vs = B.format(v)
        if vs == "1":
            vpart = root
        elif vs == "-1":
            vpart = "-" + root
        else:
            vpart = f"({vs})*{root}" if _expr.needs_parens(vs) else f"{vs}*{root}"
        if B.is_zero(u):
            return vpart
        us = B.format(u)
        if _expr.needs_parens(us) and not isinstance(B, Rationals):
            us = f"({us})"
        if vpart.startswith("-"):
            return f"{us}{vpart}"
        return f"{us}+{vpart}"

    def describe(self):
        return f"{self.base.describe()}({self._root_text()})"


@dataclass(frozen=True)
class FunctionField(FieldDescriptor):
    """Rational functions ``base(var)``; raw values are ``(num, den)`` with ``den`` monic."""

    base: FieldDescriptor
    var: str

    kind = "FunctionField"

    def __post_init__(self):
        if not self.var.isidentifier():
            raise InvalidField(f"bad variable name {self.var!r}")
        if self.var in self.base.generators():
            raise InvalidField(f"variable {self.var!r} already used in the base")

    def zero(self):
        return ((), (self.base.one(),))

    def one(self):
        return ((self.base.one(),), (self.base.one(),))

    def is_zero(self, x):
        return not x[0]

    def _normalize(self, num: Poly, den: Poly):
        B = self.base
        if not den:
            raise DivisionByZero("division by zero in " + self.describe())
        if not num:
            return self.zero()
        if len(den) > 1 and len(num) > 1:
            g = _pgcd(B, num, den)
            if len(g) > 1:
                num = _pdivmod(B, num, g)[0]
                den = _pdivmod(B, den, g)[0]
        lc = den[-1]
        if lc != B.one():
            c = B.inv(lc)
            num, den = _pscale(B, num, c), _pscale(B, den, c)
        return (num, den)

    def add(self, x, y):
        B = self.base
        if not x[0]:
            return y
        if not y[0]:
            return x
        if x[1] == y[1]:
            return self._normalize(_padd(B, x[0], y[0]), x[1])
        num = _padd(B, _pmul(B, x[0], y[1]), _pmul(B, y[0], x[1]))
        return self._normalize(num, _pmul(B, x[1], y[1]))

    def neg(self, x):
        return (_pneg(self.base, x[0]), x[1])

    def mul(self, x, y):
        B = self.base
        if not x[0] or not y[0]:
            return self.zero()
        n1, d1 = x
        n2, d2 = y
        # cross-cancel before multiplying to keep degrees small
        if len(n1) > 1 and len(d2) > 1:
            g = _pgcd(B, n1, d2)
            if len(g) > 1:
                n1, d2 = _pdivmod(B, n1, g)[0], _pdivmod(B, d2, g)[0]
        if len(n2) > 1 and len(d1) > 1:
            g = _pgcd(B, n2, d1)
            if len(g) > 1:
                n2, d1 = _pdivmod(B, n2, g)[0], _pdivmod(B, d1, g)[0]
        num, den = _pmul(B, n1, n2), _pmul(B, d1, d2)
        lc = den[-1]
        if lc != B.one():
            c = B.inv(lc)
            num, den = _pscale(B, num, c), _pscale(B, den, c)
        return (num, den)

    def inv(self, x):
        if not x[0]:
            raise DivisionByZero("division by zero in " + self.describe())
        num, den = x
        c = self.base.inv(num[-1])
        return (_pscale(self.base, den, c), _pscale(self.base, num, c))

    def embed(self, b):
        if self.base.is_zero(b):
            return self.zero()
        return ((b,), (self.base.one(),))

    def gen(self) -> FieldElement:
        B = self.base
        return FieldElement(self, ((B.zero(), B.one()), (B.one(),)))

    def from_poly(self, coeffs: Sequence[Any]) -> FieldElement:
        """Element given by base coefficients, low degree first."""
        B = self.base
        c = _trim(B, [B.coerce(a).raw for a in coeffs])
        return FieldElement(self, (c, (B.one(),)) if c else self.zero())

    def numerator(self, x: FieldElement) -> Poly:
        return self.coerce(x).raw[0]

    def denominator(self, x: FieldElement) -> Poly:
        return self.coerce(x).raw[1]

    def generators(self):
        gens = super().generators()
        gens[self.var] = self.gen()
        return gens

    def format(self, x):
        num, den = x
        ns = _pformat(self.base, num, self.var)
        if den == (self.base.one(),):
            return ns
        ds = _pformat(self.base, den, self.var)
        if _expr.needs_parens(ns):
            ns = f"({ns})"
        if _expr.needs_parens(ds) or "*" in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def describe(self):
        return f"{self.base.describe()}({self.var})"

    def is_square_raw(self, x):
        num, den = x
        if not num:
            return x
        r = _psqrt(self.base, _pmul(self.base, num, den))
        if r is None:
            return None
        return self._normalize(r, den)


@dataclass(frozen=True)
class QuotientExt(FieldDescriptor):
    """``base[var]/(modulus)`` for an irreducible ``modulus`` of degree >= 2."""

    base: FieldDescriptor
    modulus: Poly
    var: str = "t"

    kind = "QuotientExt"

    def __post_init__(self):
        B = self.base
        if isinstance(self.modulus, str):
            mod = _parse_upoly(B, self.modulus, self.var)
        else:
            mod = _trim(B, [B.coerce(c).raw if not _is_raw(B, c) else c for c in self.modulus])
        if len(mod) < 3:
            raise InvalidField("defining polynomial must have degree >= 2")
        mod = _pmonic(B, mod)
        object.__setattr__(self, "modulus", mod)
        if not self.var.isidentifier() or self.var in B.generators():
            raise InvalidField(f"bad generator name {self.var!r}")
        self._check_irreducible(mod)

    def _check_irreducible(self, mod: Poly) -> None:
        B = self.base
        deg = len(mod) - 1
        if deg == 2:
            if B.characteristic == 2:
                raise InvalidField("degree-2 irreducibility test needs odd characteristic")
            c, b, _ = mod
            disc = B.sub(B.mul(b, b), B.mul(B.from_fraction(Fraction(4)), c))
            try:
                root = B.is_square_raw(disc)
            except UnsupportedField as exc:
                raise InvalidField("no irreducibility test available over the base") from exc
            if root is not None:
                raise InvalidField("defining polynomial is reducible (square discriminant)")
            return
        if isinstance(B, PrimeField):
            if not _rabin_irreducible(B, mod):
                raise InvalidField("defining polynomial is reducible over the prime field")
            return
        raise InvalidField("no irreducibility test available for this degree and base")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def zero(self):
        return ()

    def one(self):
        return (self.base.one(),)

    def is_zero(self, x):
        return not x

    def add(self, x, y):
        return _padd(self.base, x, y)

    def sub(self, x, y):
        return _psub(self.base, x, y)

    def neg(self, x):
        return _pneg(self.base, x)

    def mul(self, x, y):
        prod = _pmul(self.base, x, y)
        if len(prod) > self.degree:
            prod = _pdivmod(self.base, prod, self.modulus)[1]
        return prod

    def inv(self, x):
        if not x:
            raise DivisionByZero("division by zero in " + self.describe())
        g, s, _ = _pxgcd(self.base, x, self.modulus)
        if len(g) != 1:
            raise DivisionByZero("zero divisor: defining polynomial is reducible")
        return _pdivmod(self.base, s, self.modulus)[1]

    def embed(self, b):
        return () if self.base.is_zero(b) else (b,)

    def gen(self) -> FieldElement:
        return FieldElement(self, (self.base.zero(), self.base.one()))

    def reduce_raw(self, poly: Poly) -> Poly:
        return _pdivmod(self.base, _trim(self.base, poly), self.modulus)[1]

    def generators(self):
        gens = super().generators()
        gens[self.var] = self.gen()
        return gens

    def format(self, x):
        return _pformat(self.base, x, self.var)

    def describe(self):
        return f"{self.base.describe()}[{self.var}]/({_pformat(self.base, self.modulus, self.var)})"


def _is_raw(B: FieldDescriptor, c: Any) -> bool:
    if isinstance(B, Rationals):
        return isinstance(c, Fraction)
    if isinstance(B, PrimeField):
        return False
    return isinstance(c, tuple)


def _rabin_irreducible(F: PrimeField, mod: Poly) -> bool:
    n = len(mod) - 1
    x = (0, 1)
    p = F.p

    def frob(k: int) -> Poly:
        return _ppow_mod(F, x, p**k, mod)

    if _psub(F, frob(n), x) != ():
        return False
    for q in factorint(n):
        h = _psub(F, frob(n // q), x)
        if len(_pgcd(F, mod, h)) != 1:
            return False
    return True


def _parse_upoly(B: FieldDescriptor, text: str, var: str) -> Poly:
    """Parse a univariate polynomial in ``var`` with coefficients in ``B``."""
    scratch = FunctionField(B, var) if var not in B.generators() else None
    if scratch is None:
        raise ParseError(f"variable {var!r} clashes with the base field")
    val = scratch.parse(text)
    num, den = val.raw
    if den != (B.one(),):
        raise ParseError(f"{text!r} is not a polynomial in {var}")
    return num


# ----------------------------------------------------------------------
# module-level operations
# ----------------------------------------------------------------------


def arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, div} to two elements of one field."""
    if not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
        raise TypeError("arith expects FieldElement operands")
    if x.field != y.field:
        raise DescriptorMismatch(f"{x.field.describe()} vs {y.field.describe()}")
    F = x.field
    ops = {"add": F.add, "sub": F.sub, "mul": F.mul, "div": F.div}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return FieldElement(F, ops[op](x.raw, y.raw))


def reduce_in_quotient(poly: Any, desc: FieldDescriptor) -> FieldElement:
    """Reduce a univariate polynomial over the base modulo the defining polynomial.

    ``poly`` is a coefficient sequence (low degree first) or a string in the
    generator name of ``desc``.
    """
    if not isinstance(desc, QuotientExt):
        raise DescriptorMismatch(f"{desc} is not a quotient extension")
    B = desc.base
    if isinstance(poly, str):
        coeffs = _parse_upoly(B, poly, desc.var)
    else:
        coeffs = _trim(B, [c if _is_raw(B, c) else B.coerce(c).raw for c in poly])
    return FieldElement(desc, desc.reduce_raw(coeffs))


def is_square(x: FieldElement) -> FieldElement | None:
    """Square root in QQ (non-negative) or GF(p) (smallest residue), else None."""
    F = x.field
    if not isinstance(F, (Rationals, PrimeField)):
        raise UnsupportedField(f"is_square is defined over QQ and GF(p), not {F.describe()}")
    r = F.is_square_raw(x.raw)
    return None if r is None else FieldElement(F, r)


def adjoin_sqrt(base: FieldDescriptor, d: Any) -> tuple[QuadExt, FieldElement]:
    """Return ``(K, s)`` with ``K = base(sqrt(d))`` normalized and ``s*s == d``."""
    K = QuadExt(base, d)
    return K, K.sqrt(d)


def parse_field(text: str) -> FieldDescriptor:
    """Inverse of :meth:`FieldDescriptor.describe`."""
    s = text.strip()
    if s == "QQ":
        return QQ
    if s.startswith("GF(") and s.endswith(")") and s[3:-1].strip().isdigit():
        return PrimeField(int(s[3:-1]))
    if not s.endswith(")"):
        raise ParseError(f"unknown field {text!r}")
    start = _matching_open(s, len(s) - 1)
    inner = s[start + 1 : -1]
    head = s[:start]
    if head.endswith("/") and head[:-1].endswith("]"):
        bracket = head[:-1]
        bstart = bracket.rindex("[")
        var = bracket[bstart + 1 : -1]
        base = parse_field(bracket[:bstart])
        return QuotientExt(base, inner, var)
    base = parse_field(head)
    if inner.startswith("sqrt(") and inner.endswith(")"):
        return QuadExt(base, base.parse(inner[5:-1]).raw)
    return FunctionField(base, inner)


def _matching_open(s: str, close: int) -> int:
    depth = 0
    for i in range(close, -1, -1):
        if s[i] == ")":
            depth += 1
        elif s[i] == "(":
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced parentheses in {s!r}")


def rational_function_field(*names: str, base: FieldDescriptor = QQ) -> FieldDescriptor:
    """Tower ``base(n1)(n2)...``."""
    F = base
    for n in names:
        F = FunctionField(F, n)
    return F
