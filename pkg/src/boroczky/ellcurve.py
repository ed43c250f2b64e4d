"""The parameter curve of the fifteen-line arrangement.

The condition ``f(a, b) = 0`` is birational to

    C:  T^2 = a (1 + a) (4 + a + a^2)
    E:  Y^2 + X*Y + Y = X^3 + X^2

via ``b = ((a-1) a T + a^2 + a^4) / (2 (a^2 + a - 1))`` and
``a = 1/X, T = (2Y + X + 1) / X^2``.  Rational points of E pull back to
rational parameter pairs, and each of them turns out to be forbidden.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Any

from sympy import divisors

from .errors import MapUndefined, PointNotOnCurve
from .scalar import QQ, FieldDescriptor, FieldElement


@dataclass(frozen=True)
class EllipticCurve:
    """``Y^2 + w1 XY + w3 Y = X^3 + w2 X^2 + w4 X + w6`` over QQ."""

    w1: Fraction
    w2: Fraction
    w3: Fraction
    w4: Fraction
    w6: Fraction

    def __post_init__(self):
        for k in ("w1", "w2", "w3", "w4", "w6"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.discriminant == 0:
            raise ValueError("singular Weierstrass equation")

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.w1, self.w2, self.w3, self.w4, self.w6)

    @property
    def b_invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        w1, w2, w3, w4, w6 = self.coefficients
        b2 = w1 * w1 + 4 * w2
        b4 = 2 * w4 + w1 * w3
        b6 = w3 * w3 + 4 * w6
        b8 = w1 * w1 * w6 + 4 * w2 * w6 - w1 * w3 * w4 + w2 * w3 * w3 - w4 * w4
        return b2, b4, b6, b8

    @property
    def c_invariants(self) -> tuple[Fraction, Fraction]:
        b2, b4, b6, _ = self.b_invariants
        return b2 * b2 - 24 * b4, -(b2**3) + 36 * b2 * b4 - 216 * b6

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def lhs_rhs(self, X: Any, Y: Any) -> tuple[Any, Any]:
        w1, w2, w3, w4, w6 = self.coefficients
        return Y * Y + w1 * X * Y + w3 * Y, X**3 + w2 * X * X + w4 * X + w6

    def contains(self, P: ECPoint) -> bool:
        if P.is_infinity:
            return True
        lhs, rhs = self.lhs_rhs(P.X, P.Y)
        return lhs == rhs

    def point(self, X: Any, Y: Any, field: FieldDescriptor = QQ) -> ECPoint:
        P = ECPoint(field.coerce(X), field.coerce(Y))
        if not self.contains(P):
            raise PointNotOnCurve(f"({X}, {Y}) is not on {self}")
        return P

    def __str__(self) -> str:
        return "Y^2 + {}*X*Y + {}*Y = X^3 + {}*X^2 + {}*X + {}".format(*self.coefficients)


E = EllipticCurve(1, 1, 1, 0, 0)


@dataclass(frozen=True)
class ECPoint:
    X: FieldElement | None = None
    Y: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.X is None

    def to_json(self) -> Any:
        return "O" if self.is_infinity else [str(self.X), str(self.Y)]

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.X}, {self.Y})"


INFINITY = ECPoint()


def _check(E: EllipticCurve, *pts: ECPoint) -> None:
    for P in pts:
        if not E.contains(P):
            raise PointNotOnCurve(f"{P} is not on the curve")


def ec_neg(E: EllipticCurve, P: ECPoint) -> ECPoint:
    _check(E, P)
    if P.is_infinity:
        return P
    return ECPoint(P.X, -P.Y - E.w1 * P.X - E.w3)


def ec_add(E: EllipticCurve, P: ECPoint, Q: ECPoint) -> ECPoint:
    """Chord-tangent addition on a long Weierstrass curve."""
    _check(E, P, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    w1, w2, w3, w4, _ = E.coefficients
    x1, y1, x2, y2 = P.X, P.Y, Q.X, Q.Y
    if x1 == x2:
        if (y1 + y2 + w1 * x2 + w3).is_zero():
            return INFINITY
        lam = (3 * x1 * x1 + 2 * w2 * x1 + w4 - w1 * y1) / (2 * y1 + w1 * x1 + w3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + w1 * lam - w2 - x1 - x2
    y3 = -(lam + w1) * x3 - nu - w3
    return ECPoint(x3, y3)


def ec_mul(E: EllipticCurve, n: int, P: ECPoint) -> ECPoint:
    R = INFINITY
    Q = P if n >= 0 else ec_neg(E, P)
    for _ in range(abs(n)):
        R = ec_add(E, R, Q)
    return R


def order(E: EllipticCurve, P: ECPoint, limit: int = 12) -> int | None:
    """Order of P if at most ``limit`` (torsion over QQ never exceeds 12)."""
    Q = P
    for n in range(1, limit + 1):
        if Q.is_infinity:
            return n
        Q = ec_add(E, Q, P)
    return None


# ----------------------------------------------------------------------
# birational maps
# ----------------------------------------------------------------------


def f_ab(a, b):
    return a**4 * b - a**2 * b**2 - a**3 + a**2 * b - a * b**2 + b**2


def quartic(a):
    return a * (1 + a) * (4 + a + a * a)


def map_ab_to_aT(a: FieldElement, b: FieldElement) -> tuple[FieldElement, FieldElement]:
    if not f_ab(a, b).is_zero():
        raise MapUndefined("f(a, b) != 0")
    if a.is_zero() or a == 1:
        raise MapUndefined("a in {0, 1}")
    den = a * a + a - 1
    if den.is_zero():
        raise MapUndefined("a^2 + a - 1 = 0")
    T = (2 * den * b - a * a - a**4) / ((a - 1) * a)
    return a, T


def map_aT_to_ab(a: FieldElement, T: FieldElement) -> tuple[FieldElement, FieldElement]:
    if T * T != quartic(a):
        raise MapUndefined("T^2 != a(1+a)(4+a+a^2)")
    den = a * a + a - 1
    if den.is_zero():
        raise MapUndefined("a^2 + a - 1 = 0")
    b = ((a - 1) * a * T + a * a + a**4) / (2 * den)
    return a, b


def map_aT_to_XY(a: FieldElement, T: FieldElement) -> ECPoint:
    if T * T != quartic(a):
        raise MapUndefined("T^2 != a(1+a)(4+a+a^2)")
    if a.is_zero():
        raise MapUndefined("a = 0 has no image (X = 1/a)")
    X = 1 / a
    Y = (T * X * X - X - 1) / 2
    return ECPoint(X, Y)


def map_XY_to_aT(P: ECPoint, curve: EllipticCurve = E) -> tuple[FieldElement, FieldElement]:
    if P.is_infinity:
        raise MapUndefined("point at infinity: a = 0")
    _check(curve, P)
    if P.X.is_zero():
        raise MapUndefined("X = 0: a = 1/X undefined (a at infinity)")
    X, Y = P.X, P.Y
    return 1 / X, (2 * Y + X + 1) / (X * X)


@dataclass(frozen=True)
class ParamChainPoint:
    """A point on one of the three models: kind in {"ab", "aT", "XY"}."""

    kind: str
    coords: tuple

    def valid(self) -> bool:
        if self.kind == "ab":
            return f_ab(*self.coords).is_zero()
        if self.kind == "aT":
            a, T = self.coords
            return T * T == quartic(a)
        if self.kind == "XY":
            return E.contains(ECPoint(*self.coords))
        raise ValueError(f"unknown model {self.kind!r}")


# ----------------------------------------------------------------------
# rational points
# ----------------------------------------------------------------------


def _solve_Y(E: EllipticCurve, X: Fraction) -> list[Fraction]:
    w1, w2, w3, w4, w6 = E.coefficients
    s = w1 * X + w3
    rhs = X**3 + w2 * X * X + w4 * X + w6
    disc = s * s + 4 * rhs
    r = QQ.is_square_raw(disc)
    if r is None:
        return []
    return sorted({(-s + r) / 2, (-s - r) / 2})


def search_points(E: EllipticCurve, height_bound: int) -> list[ECPoint]:
    """Affine points with X = p/q, |p| <= bound, 1 <= q <= bound.

    On a curve with integral coefficients the denominator of X is a perfect
    square, so only square q are tried.
    """
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    if any(c.denominator != 1 for c in E.coefficients):
        raise ValueError("search expects integral coefficients")
    found = []
    e = 1
    while e * e <= height_bound:
        q = e * e
        for p in range(-height_bound, height_bound + 1):
            if gcd(p, q) != 1:
                continue
            X = Fraction(p, q)
            for Y in _solve_Y(E, X):
                found.append(ECPoint(QQ(X), QQ(Y)))
        e += 1
    return found


def _key(P: ECPoint) -> tuple:
    return (0,) if P.is_infinity else (1, P.X.raw, P.Y.raw)


def nagell_lutz(E: EllipticCurve) -> list[ECPoint]:
    """Torsion points via Nagell-Lutz on an integral short model.

    ``x = 36 X + 3 b2`` and ``y = 108 (2Y + w1 X + w3)`` give
    ``y^2 = x^3 - 27 c4 x - 54 c6``.  Torsion points of the short model are
    integral with ``y = 0`` or ``y^2`` dividing ``4A^3 + 27B^2``.
    """
    b2 = E.b_invariants[0]
    c4, c6 = E.c_invariants
    A, B = -27 * c4, -54 * c6
    if A.denominator != 1 or B.denominator != 1:
        raise ValueError("short model is not integral")
    A, B = int(A), int(B)
    D = abs(4 * A**3 + 27 * B * B)
    ys = [0] + [y for y in divisors(D) if D % (y * y) == 0]
    out = [INFINITY]
    for y in ys:
        for sign in ((1,) if y == 0 else (1, -1)):
            yy = sign * y
            for x in _integer_roots(A, B - yy * yy):
                X = (Fraction(x) - 3 * b2) / 36
                Y = (Fraction(yy) / 108 - E.w1 * X - E.w3) / 2
                P = ECPoint(QQ(X), QQ(Y))
                if E.contains(P) and order(E, P) is not None:
                    out.append(P)
    return sorted(set(out), key=_key)


def _integer_roots(A: int, C: int) -> list[int]:
    """Integer x with x^3 + A x + C = 0."""
    if C == 0:
        roots = {0}
        if -A >= 0 and isqrt(-A) ** 2 == -A:
            r = isqrt(-A)
            roots |= {r, -r}
        return sorted(roots)
    return sorted(
        x for d in divisors(abs(C)) for x in (d, -d) if x**3 + A * x + C == 0
    )


@dataclass
class RationalPoints:
    search: list[ECPoint]
    torsion: list[ECPoint]
    height_bound: int

    @property
    def agree(self) -> bool:
        return [_key(p) for p in self.search] == [_key(p) for p in self.torsion]

    @property
    def points(self) -> list[ECPoint]:
        return self.search


def rational_points(E: EllipticCurve = E, height_bound: int = 100) -> RationalPoints:
    """Height search plus the Nagell-Lutz torsion list, both including O."""
    found = sorted(set([INFINITY] + search_points(E, height_bound)), key=_key)
    return RationalPoints(found, nagell_lutz(E), height_bound)


# ----------------------------------------------------------------------
# certificate
# ----------------------------------------------------------------------


def _pullback(P: ECPoint) -> dict:
    rec: dict[str, Any] = {"point": P.to_json(), "steps": []}
    steps = rec["steps"]
    try:
        a, T = map_XY_to_aT(P)
    except MapUndefined as exc:
        steps.append(str(exc))
        rec["verdict"] = "rejected: parameter a undefined"
        return rec
    steps.append(f"a = 1/X = {a}, T = (2Y + X + 1)/X^2 = {T}")
    steps.append(f"T^2 = {T * T}, a(1+a)(4+a+a^2) = {quartic(a)}")
    if a.is_zero() or a == 1:
        rec["verdict"] = f"rejected: a = {a} forbidden"
        return rec
    try:
        a, b = map_aT_to_ab(a, T)
    except MapUndefined as exc:
        steps.append(str(exc))
        rec["verdict"] = "rejected: b undefined"
        return rec
    steps.append(f"b = ((a-1)aT + a^2 + a^4)/(2(a^2+a-1)) = {b}")
    steps.append(f"f(a, b) = {f_ab(a, b)}")
    rec["a"], rec["b"] = str(a), str(b)
    if b.is_zero() or b == 1:
        rec["verdict"] = f"rejected: b = {b} forbidden"
    elif b == a:
        rec["verdict"] = "rejected: b = a"
    else:
        rec["verdict"] = "valid"
    return rec


def certify_no_rational_b15(height_bound: int = 1000) -> dict:
    """Pull every rational point of E back to (a, b) and check each is forbidden.

    The list of rational points comes from the height search and is
    cross-checked against the Nagell-Lutz torsion points; the verdict is
    ``NoRationalB15`` only when both agree and no pullback is valid.
    """
    rp = rational_points(E, height_bound)
    pulls = [_pullback(P) for P in rp.points]
    ok = rp.agree and all(p["verdict"] != "valid" for p in pulls)
    return {
        "curve": [int(c) for c in E.coefficients],
        "discriminant": str(E.discriminant),
        "height_bound": height_bound,
        "points": [P.to_json() for P in rp.points],
        "torsion": [P.to_json() for P in rp.torsion],
        "methods_agree": rp.agree,
        "pullbacks": pulls,
        "verdict": "NoRationalB15" if ok else "Inconclusive",
    }
