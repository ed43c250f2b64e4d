"""The fifteen-line arrangement with 31 triple points.

Two parameters enter: ``P5 = (a:a:1)`` and ``P15 = (b:b:1)`` on the line
``x = y``.  The construction closes up exactly when ``f(a, b) = 0`` with

    f = a^4*b - a^2*b^2 - a^3 + a^2*b - a*b^2 + b^2,

so every concrete instance lives over a quadratic extension of QQ(a) or,
for rational ``a``, over QQ(sqrt(disc)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import (
    BoroczkyError,
    CoefficientVanishes,
    DerivationMismatch,
    ForbiddenA,
    InternalMismatch,
    ParameterInvalid,
)
from .polyalg import MultiPoly, PolyRing, buchberger, det, exact_quotient, normalize, strip_factor
from .projgeom import Configuration, ProjLine, ProjPoint, census, collinear, join, meet
from .scalar import QQ, FieldDescriptor, FieldElement, FunctionField, QuadExt, QuotientExt, is_square

log = logging.getLogger(__name__)

F_TEXT = "a^4*b - a^2*b^2 - a^3 + a^2*b - a*b^2 + b^2"


def f_poly(a, b):
    return a**4 * b - a**2 * b**2 - a**3 + a**2 * b - a * b**2 + b**2


def closed_form_points(a, b) -> dict[int, tuple]:
    z = a - a
    o = z + 1
    u = -(a**5) * b + a**4 * b + a**4 - a**3
    w = -(a**3) * b + a**3 - a**2 + 2 * a * b - b
    s = a**3 * b - a**2 * b - a * b + b
    t = -(a**6) * b + a**5 * b + a**5 - a**4 - a**3 + a**2 * b + a**2 - a * b
    r = a**5 * b - a**4 * b - a**4 - a**3 * b + a**3 + a**2 * b + a * b - b
    h = -(a**3) + a**2 * b + a**2 - a * b
    e = a**5 - a**4 * b - 2 * a**4 + 2 * a**3 * b + a**3 - a**2 * b
    return {
        1: (o, z, z),
        2: (z, o, z),
        3: (z, z, o),
        4: (o, o, o),
        5: (a, a, o),
        6: (a, o, o),
        7: (o, a, o),
        8: (o, a, a),
        9: (a, o, a),
        10: (o, o, a),
        11: (o, a, a**2),
        12: (a, o, a**2),
        13: (a, a**2, o),
        14: (a**2, a, o),
        15: (b, b, o),
        16: (a - b, -(a**3) * b + a**2 * b + a**2 - b, a**2 - a * b),
        17: (a**3 * b - a**2 * b - a**2 + b, -a + b, -(a**2) + a * b),
        18: (w, u, u),
        19: (u, w, u),
        20: (o, a**2, a),
        21: (a**2, o, a),
        22: (s, s, a**5 * b - a**4 * b - a**4 + 2 * a**3 - a**2 * b - a**2 + a * b),
        23: (-s, -(a**4) * b + a**3 * b + a**2 * b - a * b, t),
        24: (-(a**4) * b + a**3 * b + a**2 * b - a * b, -s, t),
        25: (e, e, -(a**7) * b + 2 * a**6 * b + a**6 - 2 * a**5 - 2 * a**4 * b + a**4 + 2 * a**2 * b - a * b),
        26: (h, r, h),
        27: (r, h, h),
        28: (a**3 - a * b, a**2 * b + a**2 - 2 * a * b, a**2 - b),
        29: (a**2 * b + a**2 - 2 * a * b, a**3 - a * b, a**2 - b),
        30: (a - b, -(a**2) * b + a**2 + a * b - b, a - b),
        31: (-(a**2) * b + a**2 + a * b - b, a - b, a - b),
    }


LINE_NAMES = (
    "P1P4", "P2P4", "P3P4", "P1P5", "P2P5", "P3P6", "P3P7", "P2P8", "P1P9",
    "P14P15", "P13P15", "P11P16", "P12P17", "P18P20", "P19P21",
)


def closed_form_lines(a, b) -> dict[str, tuple]:
    """Line coefficients.  The x (resp. y) coefficient of P18P20 (resp.
    P19P21) includes the ``2*a^5`` term; without it the line misses P18."""
    z = a - a
    o = z + 1
    u = -(a**5) * b + a**4 * b + a**4 - a**3
    h = -(a**3) + a**2 * b + a**2 - a * b
    s = a**3 * b - a**2 * b - a * b + b
    p = a**7 * b - 2 * a**6 * b - a**6 + a**5 * b + 2 * a**5 - a**4
    q = -(a**5) * b + 2 * a**4 * b - 2 * a**2 * b + a * b
    e = a**5 - a**4 * b - 2 * a**4 + 2 * a**3 * b + a**3 - a**2 * b
    return {
        "P1P4": (z, -o, o),
        "P2P4": (o, z, -o),
        "P3P4": (-o, o, z),
        "P1P5": (z, -o, a),
        "P2P5": (o, z, -a),
        "P3P6": (-o, a, z),
        "P3P7": (a, -o, z),
        "P2P8": (a, z, -o),
        "P1P9": (z, -a, o),
        "P14P15": (-a + b, a**2 - b, -(a**2) * b + a * b),
        "P13P15": (-(a**2) + b, a - b, a**2 * b - a * b),
        "P11P16": (u, h, s),
        "P12P17": (h, u, s),
        "P18P20": (p, q, e),
        "P19P21": (q, p, e),
    }


# (name, first, second): points are ints, lines are strings
CONSTRUCTION: tuple[tuple[Any, Any, Any], ...] = (
    ("P1P4", 1, 4), ("P2P4", 2, 4), ("P3P4", 3, 4), ("P1P5", 1, 5), ("P2P5", 2, 5),
    (6, "P1P4", "P2P5"), (7, "P2P4", "P1P5"),
    ("P3P6", 3, 6), ("P3P7", 3, 7),
    (8, "P1P4", "P3P7"), ("P2P8", 2, 8), (9, "P2P4", "P3P6"), ("P1P9", 1, 9),
    (10, "P2P8", "P3P4"),
    (11, "P3P7", "P1P9"), (12, "P3P6", "P2P8"), (13, "P2P5", "P3P7"), (14, "P1P5", "P3P6"),
    ("P14P15", 14, 15), ("P13P15", 13, 15),
    (16, "P2P8", "P13P15"), (17, "P1P9", "P14P15"),
    ("P11P16", 11, 16), ("P12P17", 12, 17),
    (18, "P1P4", "P11P16"), (19, "P2P4", "P12P17"), (20, "P1P5", "P2P8"), (21, "P2P5", "P1P9"),
    ("P18P20", 18, 20), ("P19P21", 19, 21),
    (22, "P3P4", "P11P16"),
    (23, "P3P7", "P12P17"), (24, "P3P6", "P11P16"), (25, "P3P4", "P18P20"),
    (26, "P2P4", "P11P16"), (27, "P1P4", "P12P17"), (28, "P2P5", "P14P15"),
    (29, "P1P5", "P13P15"), (30, "P2P4", "P13P15"), (31, "P1P4", "P14P15"),
)

# point, and the two points spanning the line it must lie on
FACTS = {
    "fact1": (10, 1, 9),
    "fact2": (22, 12, 17),
    "fact3": (25, 19, 21),
}
CONDITIONS = (
    (23, 18, 20), (24, 19, 21), (26, 14, 15), (27, 13, 15),
    (28, 18, 20), (29, 19, 21), (30, 18, 20), (31, 19, 21),
)


def _cond_name(c: tuple[int, int, int]) -> str:
    return f"P{c[0]} in P{c[1]}P{c[2]}"


# ----------------------------------------------------------------------
# the condition ideal
# ----------------------------------------------------------------------


def ab_ring() -> PolyRing:
    return PolyRing(("a", "b"), QQ)


def condition_polynomials() -> list[MultiPoly]:
    """The eight collinearity determinants in QQ[a, b], primitive."""
    R = ab_ring()
    a, b = R.gens()
    P = closed_form_points(a, b)
    return [normalize(det([P[i], P[j], P[k]])) for i, j, k in CONDITIONS]


def fact_polynomials() -> dict[str, MultiPoly]:
    """Collinearity determinants of the three facts in QQ[a, b] (all zero)."""
    R = ab_ring()
    a, b = R.gens()
    P = closed_form_points(a, b)
    return {k: det([P[i], P[j], P[l]]) for k, (i, j, l) in FACTS.items()}


def excluded_factors(R: PolyRing | None = None) -> list[tuple[str, MultiPoly]]:
    """Factors vanishing only at forbidden parameters."""
    R = R or ab_ring()
    a, b = R.gens()
    return [
        ("a", a),
        ("a - 1", a - 1),
        ("b", b),
        ("b - 1", b - 1),
        ("b - a", b - a),
        ("a^2 + a - 1", a**2 + a - 1),
    ]


@dataclass
class StrippedCondition:
    name: str
    polynomial: MultiPoly
    stripped: dict[str, int]
    cofactor: MultiPoly
    divisible_by_f: bool


def strip_excluded(poly: MultiPoly, name: str = "") -> StrippedCondition:
    """Remove excluded factors and test divisibility of what remains by f."""
    R = poly.ring
    a, b = R.gens()
    rest = poly
    stripped = {}
    for label, fac in excluded_factors(R):
        rest, k = strip_factor(rest, fac)
        if k:
            stripped[label] = k
            log.info("%s: stripped (%s)^%d", name or "condition", label, k)
    f = f_poly(a, b)
    try:
        co = exact_quotient(rest, f) if not rest.is_zero() else rest
        ok = True
    except ValueError:
        co, ok = rest, False
    return StrippedCondition(name, poly, stripped, co, ok)


def stripped_conditions() -> list[StrippedCondition]:
    return [strip_excluded(p, _cond_name(c)) for p, c in zip(condition_polynomials(), CONDITIONS)]


@dataclass
class ConditionIdeal:
    generator: MultiPoly
    excluded: MultiPoly
    power: int
    cofactor: MultiPoly
    basis: list[MultiPoly]

    def __str__(self) -> str:
        fac = str(self.excluded).replace(" ", "")
        return f"({fac})^{self.power} * ({self.cofactor})"


def derive_condition_ideal() -> ConditionIdeal:
    """Reduced Groebner basis of the eight conditions; it must be ((a-1)^2 * f)."""
    polys = condition_polynomials()
    gb = buchberger(polys)
    if len(gb) != 1:
        raise DerivationMismatch(f"condition ideal is not principal: {len(gb)} generators")
    R = ab_ring()
    a, b = R.gens()
    g = normalize(gb[0])
    cof, k = strip_factor(g, a - 1)
    f = f_poly(a, b)
    if k != 2 or normalize(cof) != normalize(f):
        raise DerivationMismatch(f"unexpected generator {g}")
    return ConditionIdeal(g, a - 1, k, normalize(cof), gb)


# ----------------------------------------------------------------------
# parameters
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class B15Parameters:
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.field != self.b.field:
            object.__setattr__(self, "a", self.b.field.coerce(self.a))
        a, b = self.a, self.b
        for bad in (0, 1):
            if a == bad:
                raise ForbiddenA(f"a = {bad} is forbidden")
        for bad, why in ((0, "b = 0"), (1, "b = 1"), (a, "b = a")):
            if b == bad:
                raise ParameterInvalid(f"{why} is forbidden")
        if not f_poly(a, b).is_zero():
            raise ParameterInvalid("f(a, b) != 0")

    @property
    def field(self) -> FieldDescriptor:
        return self.b.field


def b_candidates(a: Any) -> tuple[Fraction, list[tuple[FieldElement, str | None]]]:
    """Roots of f(a, .) for rational ``a`` with a rejection reason (or None).

    Returns ``(discriminant, [(b, reason), ...])``.
    """
    a = Fraction(a) if not isinstance(a, FieldElement) else Fraction(a.raw)
    if a in (0, 1):
        raise ForbiddenA(f"a = {a} is forbidden")
    A = 1 - a - a * a
    B = a**4 + a**2
    C = -(a**3)
    if A == 0:
        raise CoefficientVanishes("a^2 + a - 1 = 0: f is not quadratic in b")
    disc = B * B - 4 * A * C
    r = is_square(QQ(disc))
    if r is not None:
        K = QQ
        roots = sorted({(-B + r.raw) / (2 * A), (-B - r.raw) / (2 * A)})
        vals = [QQ(x) for x in roots]
    else:
        K, s = QuadExt(QQ, disc), None
        s = K.sqrt(disc)
        vals = [(s - B) / (2 * A), (-s - B) / (2 * A)]
    out = []
    aK = K(a)
    for bv in vals:
        reason = None
        if bv.is_zero():
            reason = "b = 0 forbidden"
        elif bv == 1:
            reason = "b = 1 forbidden"
        elif bv == aK:
            reason = f"b = {bv} = a forbidden"
        out.append((bv, reason))
    return disc, out


def solve_b(a: Any) -> list[B15Parameters]:
    """Valid parameter pairs with the given rational ``a``."""
    _, cands = b_candidates(a)
    out = []
    for bv, reason in cands:
        if reason is not None:
            log.info("a = %s: root %s rejected (%s)", a, bv, reason)
            continue
        out.append(B15Parameters(bv.field(Fraction(a)), bv))
    return out


def symbolic_field() -> QuotientExt:
    """``QQ(a)[b]/(f)``."""
    Qa = FunctionField(QQ, "a")
    return QuotientExt(Qa, F_TEXT, "b")


def symbolic_parameters() -> B15Parameters:
    K = symbolic_field()
    g = K.generators()
    return B15Parameters(g["a"], g["b"])


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------


@dataclass
class B15Result:
    params: B15Parameters
    configuration: Configuration
    points: dict[int, ProjPoint]
    lines: dict[str, ProjLine]
    facts: dict[str, bool]
    conditions: list[bool]
    census_deviates: bool = False
    labels: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = self.configuration.to_dict()
        d["a"] = str(self.params.a)
        d["b"] = str(self.params.b)
        d["facts"] = self.facts
        d["conditions"] = self.conditions
        d["labels"] = self.labels
        return d


EXPECTED_CENSUS = {2: 12, 3: 31}


def build(params: B15Parameters, *, check: bool = True) -> B15Result:
    """Construct the arrangement over the field of ``params``.

    Raises InternalMismatch when closed forms and join/meet disagree or when
    a labelled point does not end up on exactly three lines.
    """
    K = params.field
    a, b = params.a, params.b
    cps = closed_form_points(a, b)
    cls_ = closed_form_lines(a, b)
    try:
        points = {i: ProjPoint(v, f"P{i}", field=K) for i, v in cps.items()}
        lines = {n: ProjLine(v, n, field=K) for n, v in cls_.items()}
    except ValueError as exc:
        raise ParameterInvalid(f"construction collapses: {exc}") from exc
    if check:
        _check_against_join_meet(points, lines)
    facts = {k: collinear(points[i], points[j], points[l]) for k, (i, j, l) in FACTS.items()}
    conds = [collinear(points[i], points[j], points[l]) for i, j, l in CONDITIONS]
    line_list = [lines[n] for n in LINE_NAMES]
    if len(set(line_list)) != 15:
        raise ParameterInvalid("the fifteen lines are not distinct")
    cfg = census(line_list, points.values())
    keys = {r.point.raw: i for i, r in enumerate(cfg.points)}
    pidx = {f"P{i}": keys.get(p.raw) for i, p in points.items()}
    for name, i in pidx.items():
        if i is None or cfg.points[i].mult != 3:
            raise InternalMismatch(f"{name} is not a triple point")
    deviates = cfg.census != EXPECTED_CENSUS
    if deviates:
        log.warning("census %s at a=%s, b=%s differs from the expected one", cfg.census, a, b)
    return B15Result(
        params, cfg, points, lines, facts, conds, deviates,
        {"points": pidx, "lines": {n: i for i, n in enumerate(LINE_NAMES)}},
    )


def _check_against_join_meet(points: dict, lines: dict) -> None:
    derived: dict[Any, Any] = {i: points[i] for i in (1, 2, 3, 4, 5, 15)}
    for name, x, y in CONSTRUCTION:
        u, v = derived[x], derived[y]
        op = join if isinstance(u, ProjPoint) else meet
        try:
            obj = op(u, v)
        except BoroczkyError as exc:
            raise InternalMismatch(f"{name}: construction step undefined ({exc})") from exc
        closed = points[name] if isinstance(name, int) else lines[name]
        if obj != closed:
            raise InternalMismatch(f"{name}: closed form {closed} differs from {obj}")
        derived[name] = obj


# ----------------------------------------------------------------------
# rational attempts
# ----------------------------------------------------------------------


@dataclass
class RationalAttempt:
    a: Fraction
    valid: bool
    reason: str
    discriminant: Fraction | None = None
    roots: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "valid": self.valid,
            "reason": self.reason,
            "discriminant": None if self.discriminant is None else str(self.discriminant),
            "roots": self.roots,
        }


def attempt_rational(a: Any) -> RationalAttempt:
    """Explain why rational ``a`` gives no rational B15 (or report a pair if it did)."""
    a = Fraction(a)
    try:
        disc, cands = b_candidates(a)
    except ForbiddenA:
        return RationalAttempt(a, False, f"a = {a} forbidden")
    except CoefficientVanishes as exc:
        return RationalAttempt(a, False, str(exc))
    roots = [str(bv) for bv, _ in cands]
    if cands[0][0].field != QQ:
        return RationalAttempt(a, False, f"discriminant {disc} not a rational square", disc, roots)
    good = [bv for bv, r in cands if r is None]
    if good:
        return RationalAttempt(a, True, f"rational root b = {good[0]}", disc, roots)
    reasons = "; ".join(dict.fromkeys(r for _, r in cands))
    return RationalAttempt(a, False, reasons, disc, roots)
