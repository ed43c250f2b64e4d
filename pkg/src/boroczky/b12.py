"""The twelve-line Böröczky arrangement and its degenerations.

Three points D, E, F on the sides of the reference triangle ABC are given
by ratios ``(a1:a2)``, ``(b1:b2)``, ``(c1:c2)``.  Joining and intersecting
in a fixed order produces 12 lines and 19 triple points for a general
choice.  Every coordinate has a closed polynomial form; :func:`build`
evaluates those forms and also repeats the construction with join/meet,
checking the two agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Iterable, Iterator, Sequence

from .errors import (
    BoroczkyError,
    GenericParameter,
    InternalMismatch,
    ParseError,
)
from .polyalg import MultiPoly, PolyRing, det
from .projgeom import (
    Configuration,
    ProjLine,
    ProjPoint,
    census,
    collinear,
    join,
    meet,
)
from .scalar import QQ, FieldDescriptor, FieldElement, rational_function_field

PARAM_NAMES = ("a1", "a2", "b1", "b2", "c1", "c2")
POINT_NAMES = tuple("ABCDEFGHIJKLMNOPQRS")
LINE_NAMES = ("AB", "AC", "BC", "AF", "BD", "EF", "ED", "HJ", "IK", "NG", "CP", "MO")

# how each object arises in the construction, in order
CONSTRUCTION: tuple[tuple[str, str, str], ...] = (
    ("AB", "A", "B"), ("AC", "A", "C"), ("BC", "B", "C"),
    ("AF", "A", "F"), ("BD", "B", "D"), ("EF", "E", "F"), ("ED", "E", "D"),
    ("G", "AF", "BD"), ("H", "BD", "EF"), ("I", "BC", "ED"), ("J", "AF", "ED"), ("K", "AC", "EF"),
    ("HJ", "H", "J"), ("IK", "I", "K"),
    ("L", "HJ", "IK"), ("M", "BD", "IK"), ("N", "AC", "HJ"), ("O", "HJ", "BC"), ("P", "AF", "IK"),
    ("NG", "N", "G"), ("CP", "C", "P"),
    ("Q", "EF", "NG"), ("R", "ED", "CP"), ("S", "CP", "NG"),
    ("MO", "M", "O"),
)


def closed_form_points(a1, a2, b1, b2, c1, c2) -> dict[str, tuple]:
    """Coordinates of A..S as polynomials in the six parameters."""
    z = a1 - a1
    o = z + 1
    q = a1**2 * b1**2 * c1**2 + a2**2 * b2**2 * c2**2 + a1 * a2 * b1 * b2 * c1 * c2
    return {
        "A": (o, z, z),
        "B": (z, o, z),
        "C": (z, z, o),
        "D": (a2, z, a1),
        "E": (b1, b2, z),
        "F": (z, c1, c2),
        "G": (a2 * c2, a1 * c1, a1 * c2),
        "H": (a2 * b1 * c2, a2 * b2 * c2 + a1 * b1 * c1, a1 * b1 * c2),
        "I": (z, a2 * b2, -a1 * b1),
        "J": (a1 * b1 * c1 + a2 * b2 * c2, a1 * b2 * c1, a1 * b2 * c2),
        "K": (b1 * c1, z, -b2 * c2),
        "L": (a1 * b1**2 * c1, -a2 * b2**2 * c2, z),
        "M": (-a1 * a2 * b1**2 * c1, a2**2 * b2**2 * c2 + a1 * a2 * b1 * b2 * c1, -(a1**2) * b1**2 * c1),
        "N": (q, z, a1 * a2 * b2**2 * c2**2),
        "O": (z, q, a1**2 * b1**2 * c1 * c2),
        "P": (a1 * b1**2 * c1**2 + a2 * b1 * b2 * c1 * c2, -a2 * b2**2 * c1 * c2, -a2 * b2**2 * c2**2),
        "Q": (
            a2**2 * b1 * b2 * c2**2,
            a1**2 * b1**2 * c1**2 + 2 * a1 * a2 * b1 * b2 * c1 * c2 + a2**2 * b2**2 * c2**2,
            a1**2 * b1**2 * c1 * c2 + 2 * a1 * a2 * b1 * b2 * c2**2,
        ),
        "R": (
            a1 * a2 * b1**2 * c1 + a2**2 * b1 * b2 * c2,
            -(a2**2) * b2**2 * c2,
            a1**2 * b1**2 * c1 + 2 * a1 * a2 * b1 * b2 * c2,
        ),
        "S": (a1 * b1**2 * c1 + a2 * b1 * b2 * c2, -a2 * b2**2 * c2, z),
    }


def closed_form_lines(a1, a2, b1, b2, c1, c2) -> dict[str, tuple]:
    """Coefficients of the twelve lines as polynomials in the parameters.

    The MO line is join(M, O) divided by its common factor a1*b1^2*c1.
    """
    z = a1 - a1
    o = z + 1
    q = a1**2 * b1**2 * c1**2 + a2**2 * b2**2 * c2**2 + a1 * a2 * b1 * b2 * c1 * c2
    u = a1 * b1 * c1
    v = a2 * b2 * c2
    return {
        "AB": (z, z, o),
        "AC": (z, o, z),
        "BC": (o, z, z),
        "AF": (z, c2, -c1),
        "BD": (a1, z, -a2),
        "EF": (b2 * c2, -b1 * c2, b1 * c1),
        "ED": (a1 * b2, -a1 * b1, -a2 * b2),
        "HJ": (a1 * a2 * b2**2 * c2**2, a1**2 * b1**2 * c1 * c2, -q),
        "IK": (a2 * b2**2 * c2, a1 * b1**2 * c1, a2 * b1 * b2 * c1),
        "NG": (a1 * a2 * b2**2 * c2**2, a1**2 * b1**2 * c1 * c2 + a1 * a2 * b1 * b2 * c2**2, -q),
        "CP": (a2 * b2**2 * c2, a1 * b1**2 * c1 + a2 * b1 * b2 * c2, z),
        "MO": (
            a1 * (u * u + 2 * u * v + 2 * v * v),
            a1**2 * a2 * b1**2 * c1 * c2,
            -a2 * (u * u + u * v + v * v),
        ),
    }


# ----------------------------------------------------------------------
# parameters and classification
# ----------------------------------------------------------------------


def _ratio(pair: Sequence[Any], F: FieldDescriptor) -> tuple[FieldElement, FieldElement]:
    x, y = (F.coerce(t) for t in pair)
    if x.is_zero() and y.is_zero():
        raise ValueError("(0:0) is not a point of the projective line")
    if not x.is_zero():
        return F.coerce(1), y / x
    return F.coerce(0), F.coerce(1)


@dataclass(frozen=True)
class ParameterTriple:
    """Three points ``(a1:a2), (b1:b2), (c1:c2)`` of the projective line."""

    a: tuple[FieldElement, FieldElement]
    b: tuple[FieldElement, FieldElement]
    c: tuple[FieldElement, FieldElement]
    field: FieldDescriptor = QQ

    @classmethod
    def of(cls, a: Sequence, b: Sequence, c: Sequence, field: FieldDescriptor | None = None) -> ParameterTriple:
        F = field
        if F is None:
            F = next((x.field for pair in (a, b, c) for x in pair if isinstance(x, FieldElement)), QQ)
        return cls(_ratio(a, F), _ratio(b, F), _ratio(c, F), F)

    @classmethod
    def parse(cls, text: str) -> ParameterTriple:
        """Accepts ``"1/1,1/2,1/3"`` (p/q means (p:q)) or ``"(1:1),(1:2),(1:3)"``."""
        s = text.replace(" ", "")
        if "(" in s:
            pairs = re.findall(r"\(([^:()]+):([^:()]+)\)", s)
            if len(pairs) != 3 or re.sub(r"\([^()]*\)", "", s).strip(",") != "":
                raise ParseError(f"expected three ratios (p:q), got {text!r}")
        else:
            parts = s.split(",")
            if len(parts) != 3:
                raise ParseError(f"expected three ratios p/q, got {text!r}")
            pairs = [tuple(p.split("/")) if "/" in p else (p, "1") for p in parts]
        try:
            vals = [(Fraction(x), Fraction(y)) for x, y in pairs]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad ratio in {text!r}") from exc
        try:
            return cls.of(*vals)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def values(self) -> tuple[FieldElement, ...]:
        return (*self.a, *self.b, *self.c)

    def rescaled(self, la: Any, lb: Any, lc: Any) -> tuple:
        """Non-canonical representatives (for invariance tests)."""
        F = self.field
        return tuple(
            (F.coerce(l) * x, F.coerce(l) * y) for l, (x, y) in zip((la, lb, lc), (self.a, self.b, self.c))
        )

    def text(self) -> list[list[str]]:
        return [[str(x), str(y)] for x, y in (self.a, self.b, self.c)]

    def __str__(self) -> str:
        return ",".join(f"({x}:{y})" for x, y in (self.a, self.b, self.c))


TAGS = ("Generic", "D1Smooth", "D1Double", "D1Triple", "D2Menelaus", "D3Sextuple", "D1D2D3Locus")


@dataclass(frozen=True)
class DegenerationClass:
    tag: str
    zeros: tuple[str, ...] = ()
    conditions: tuple[bool, bool, bool] = (False, False, False)

    @property
    def generic(self) -> bool:
        return self.tag == "Generic"

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "zeros": list(self.zeros),
            "conditions": dict(zip(("i", "ii", "iii"), self.conditions)),
        }


def _conditions(vals: Sequence[FieldElement]) -> tuple[bool, bool, bool]:
    a1, a2, b1, b2, c1, c2 = vals
    u, v = a1 * b1 * c1, a2 * b2 * c2
    prod = a1 * a2 * b1 * b2 * c1 * c2
    return prod.is_zero(), (u + v).is_zero(), (u + 2 * v).is_zero()


def classify(m: ParameterTriple | Sequence) -> DegenerationClass:
    """Place a parameter triple in the degeneracy stratification.

    Condition i) is a1*a2*b1*b2*c1*c2 = 0, ii) is a1*b1*c1 + a2*b2*c2 = 0 and
    iii) is a1*b1*c1 + 2*a2*b2*c2 = 0.  Points satisfying ii) and iii) form
    the common locus and are tagged first.
    """
    if not isinstance(m, ParameterTriple):
        m = ParameterTriple.of(*m)
    vals = m.values()
    zeros = tuple(n for n, x in zip(PARAM_NAMES, vals) if x.is_zero())
    c = _conditions(vals)
    if c[1] and c[2]:
        tag = "D1D2D3Locus"
    elif c[0]:
        tag = ("D1Smooth", "D1Double", "D1Triple")[len(zeros) - 1]
    elif c[1]:
        tag = "D2Menelaus"
    elif c[2]:
        tag = "D3Sextuple"
    else:
        tag = "Generic"
    return DegenerationClass(tag, zeros, c)


# ----------------------------------------------------------------------
# construction
# ----------------------------------------------------------------------


@dataclass
class B12Result:
    params: ParameterTriple
    cls: DegenerationClass
    configuration: Configuration
    points: dict[str, ProjPoint | None]
    lines: dict[str, ProjLine | None]
    labels: dict[str, dict[str, int | None]] = field(default_factory=dict)

    def point(self, name: str) -> ProjPoint | None:
        return self.points[name]

    def line(self, name: str) -> ProjLine | None:
        return self.lines[name]

    def multiplicity(self, name: str) -> int | None:
        idx = self.labels["points"].get(name)
        return None if idx is None else self.configuration.points[idx].mult

    def to_dict(self) -> dict:
        d = self.configuration.to_dict()
        d["class"] = self.cls.tag
        d["labels"] = self.labels
        d["params"] = self.params.text()
        return d


def _triple(cls, F: FieldDescriptor, vals: tuple, label: str) -> Any:
    els = [F.coerce(v) for v in vals]
    if all(e.is_zero() for e in els):
        return None
    return cls(els, label, field=F)


def build(m: ParameterTriple, field: FieldDescriptor | None = None, *, check: bool = True) -> B12Result:
    """Construct the arrangement for ``m`` over ``field`` (default: the parameters' field).

    Closed-form lines that vanish identically at ``m`` are dropped and
    coinciding lines merged, so degenerate parameters give the arrangement
    that actually survives.  With ``check`` each object is recomputed by
    join/meet and compared wherever both versions are defined.
    """
    F = field or m.field
    vals = [F.coerce(v) for v in m.values()]
    cps = closed_form_points(*vals)
    cls_ = closed_form_lines(*vals)
    points = {n: _triple(ProjPoint, F, cps[n], n) for n in POINT_NAMES}
    lines = {n: _triple(ProjLine, F, cls_[n], n) for n in LINE_NAMES}
    if check:
        _check_against_join_meet(points, lines)

    distinct: list[ProjLine] = []
    line_index: dict[str, int | None] = {}
    for n in LINE_NAMES:
        l = lines[n]
        if l is None:
            line_index[n] = None
            continue
        if l in distinct:
            line_index[n] = distinct.index(l)
        else:
            line_index[n] = len(distinct)
            distinct.append(l)
    labelled = [p for p in points.values() if p is not None]
    # the first letter wins when several labelled points coincide
    cfg = census(distinct, reversed(labelled))
    point_index: dict[str, int | None] = {}
    keys = {r.point.raw: i for i, r in enumerate(cfg.points)}
    for n, p in points.items():
        point_index[n] = None if p is None else keys.get(p.raw)
    return B12Result(
        m, classify(m) if m.field == F else _classify_in(m, F), cfg, points, lines,
        {"points": point_index, "lines": line_index},
    )


def _classify_in(m: ParameterTriple, F: FieldDescriptor) -> DegenerationClass:
    return classify(ParameterTriple.of(m.a, m.b, m.c, F))


def _check_against_join_meet(points: dict, lines: dict) -> None:
    derived: dict[str, Any] = {n: points[n] for n in "ABCDEF"}
    for name, x, y in CONSTRUCTION:
        u = derived.get(x) or points.get(x) or lines.get(x)
        v = derived.get(y) or points.get(y) or lines.get(y)
        if u is None or v is None:
            derived[name] = None
            continue
        op = join if isinstance(u, ProjPoint) else meet
        try:
            obj = op(u, v)
        except BoroczkyError:
            derived[name] = None
            continue
        derived[name] = obj
        closed = points.get(name) if name in points else lines.get(name)
        if closed is not None and closed != obj:
            raise InternalMismatch(f"{name}: closed form {closed} differs from {obj}")


# ----------------------------------------------------------------------
# symbolic identities
# ----------------------------------------------------------------------


@dataclass
class IdentityReport:
    values: dict[str, MultiPoly]
    closed_forms_agree: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(v.is_zero() for v in self.values.values()) and all(self.closed_forms_agree.values())

    def to_dict(self) -> dict:
        return {
            "identities": {k: str(v) for k, v in self.values.items()},
            "closed_forms_agree": self.closed_forms_agree,
            "ok": self.ok,
        }


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def symbolic_ring() -> PolyRing:
    return PolyRing(PARAM_NAMES, QQ)


def verify_symbolic_identities() -> IdentityReport:
    """Check the incidence identities as polynomials in QQ[a1,...,c2].

    Reported values (all should be zero): z-coordinates of L and S and the
    determinants of (M, O, Q) and (M, O, R).  In addition each closed form
    is compared with the cross product of its defining pair: the two must
    be parallel vectors of polynomials.
    """
    R = symbolic_ring()
    g = R.gens()
    P = closed_form_points(*g)
    Lc = closed_form_lines(*g)
    values = {
        "L_z": P["L"][2],
        "S_z": P["S"][2],
        "det_MOQ": det([P["M"], P["O"], P["Q"]]),
        "det_MOR": det([P["M"], P["O"], P["R"]]),
    }
    agree = {}
    for name, x, y in CONSTRUCTION:
        u = P.get(x) or Lc.get(x)
        v = P.get(y) or Lc.get(y)
        closed = P.get(name) or Lc.get(name)
        c = _cross(u, v)
        agree[name] = all(t.is_zero() for t in _cross(c, closed)) and not all(t.is_zero() for t in closed)
    return IdentityReport(values, agree)


def symbolic_field() -> FieldDescriptor:
    """``QQ(a1)(a2)...(c2)``, the field of the generic parameters."""
    return rational_function_field(*PARAM_NAMES)


def symbolic_parameters() -> ParameterTriple:
    F = symbolic_field()
    g = F.generators()
    return ParameterTriple.of((g["a1"], g["a2"]), (g["b1"], g["b2"]), (g["c1"], g["c2"]), F)


# ----------------------------------------------------------------------
# degenerations
# ----------------------------------------------------------------------


# letters used for the table columns when a line goes through extra points
TABLE_COLUMNS = ("AC", "AB", "BC", "AF", "BD", "EF", "ED", "HJ", "IK", "NG", "CP", "MO")


@dataclass
class DegenerationReport:
    cls: DegenerationClass
    lines: list[str]
    census: dict[int, int]
    coincident: list[list[str]]
    incidence: dict[str, list[str]]
    extra_collinear: list[str]
    result: B12Result = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "class": self.cls.to_dict(),
            "lines": self.lines,
            "census": {str(k): v for k, v in sorted(self.census.items())},
            "coincident_points": self.coincident,
            "incidence": self.incidence,
            "extra_collinear": self.extra_collinear,
        }


def degeneration_report(m: ParameterTriple) -> DegenerationReport:
    """Lines, census and point-by-line incidence table of a degenerate triple.

    Rows are the labelled points (coinciding labels merged under the first
    letter), columns the surviving lines under their construction names.
    """
    c = classify(m)
    if c.generic:
        raise GenericParameter(f"{m} is not degenerate")
    res = build(m)
    cfg = res.configuration
    surviving = []
    seen = set()
    for n in TABLE_COLUMNS:
        i = res.labels["lines"][n]
        if i is not None and i not in seen:
            seen.add(i)
            surviving.append(n)
    groups: dict[tuple, list[str]] = {}
    for n in POINT_NAMES:
        p = res.points[n]
        if p is not None:
            groups.setdefault(p.raw, []).append(n)
    rows = {}
    for names in groups.values():
        p = res.points[names[0]]
        rows[names[0]] = [n for n in surviving if p.on(res.lines[n])]
    extra = []
    reps = [names[0] for names in groups.values()]
    for x, y, z in combinations(reps, 3):
        P, Q, R = (res.points[t] for t in (x, y, z))
        if not collinear(P, Q, R):
            continue
        if any(P.on(l) and Q.on(l) and R.on(l) for l in cfg.lines):
            continue
        extra.append(x + y + z)
    return DegenerationReport(
        c,
        surviving,
        cfg.census,
        [names for names in groups.values() if len(names) > 1],
        rows,
        extra,
        res,
    )


# ----------------------------------------------------------------------
# scanning the parameter space
# ----------------------------------------------------------------------

GENERIC_CENSUS = {2: 9, 3: 19}


@dataclass(frozen=True)
class ScanRecord:
    params: ParameterTriple
    cls: DegenerationClass
    census: dict[int, int]
    lines: int

    def to_dict(self) -> dict:
        return {
            "params": self.params.text(),
            "class": self.cls.tag,
            "lines": self.lines,
            "census": {str(k): v for k, v in sorted(self.census.items())},
        }


def scan(grid: Sequence[Sequence[Sequence[Any]]] | Sequence[Sequence[Any]]) -> Iterator[ScanRecord]:
    """Build every triple of a grid, in lexicographic grid order.

    ``grid`` is either three lists of ratios (one per slot) or a single list
    used for all three slots.  Generic records must have the generic census.
    """
    if not grid:
        return
    slots = grid if len(grid) == 3 and all(_is_ratio_list(g) for g in grid) else (grid, grid, grid)
    for a, b, c in product(*slots):
        m = ParameterTriple.of(a, b, c)
        res = build(m, check=False)
        rec = ScanRecord(m, res.cls, res.configuration.census, len(res.configuration.lines))
        if rec.cls.generic and (rec.census != GENERIC_CENSUS or rec.lines != 12):
            raise InternalMismatch(f"generic parameter {m} has census {rec.census}")
        yield rec


def _is_ratio_list(g: Any) -> bool:
    return isinstance(g, (list, tuple)) and all(
        isinstance(r, (list, tuple)) and len(r) == 2 for r in g
    )


def random_generic(rng, bound: int = 20) -> ParameterTriple:
    """A random generic triple with small rational ratios."""
    while True:
        vals = [
            (Fraction(rng.randint(-bound, bound)), Fraction(rng.randint(1, bound))) for _ in range(3)
        ]
        m = ParameterTriple.of(*vals)
        if classify(m).generic:
            return m


def sample_parameters() -> dict[str, ParameterTriple]:
    """One representative for each stratum used in examples and tests."""
    q = lambda *t: ParameterTriple.of(*t)  # noqa: E731
    return {
        "Generic": q((1, 1), (1, 2), (1, 3)),
        "D1Smooth": q((0, 1), (1, 1), (1, 1)),
        "D1Double": q((0, 1), (0, 1), (1, 1)),
        "D1Triple": q((0, 1), (0, 1), (0, 1)),
        "D2Menelaus": q((1, 1), (1, 1), (-1, 1)),
        "D3Sextuple": q((2, 1), (1, 1), (-1, 1)),
        "D1D2D3Locus": q((0, 1), (1, 0), (1, 1)),
    }
