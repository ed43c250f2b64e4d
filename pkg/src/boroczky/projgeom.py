"""Points, lines and line arrangements in the projective plane over any field."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Iterable, Sequence

from .errors import (
    CoincidentLines,
    CoincidentPoints,
    DescriptorMismatch,
    DuplicateLines,
    NotDoublyPerspective,
    ParseError,
)
from .scalar import QQ, FieldDescriptor, FieldElement, parse_field


def _field_of(values: Sequence[Any], field: FieldDescriptor | None) -> FieldDescriptor:
    if field is not None:
        return field
    for v in values:
        if isinstance(v, FieldElement):
            return v.field
    return QQ


def _canonical(F: FieldDescriptor, raw: tuple) -> tuple:
    for c in raw:
        if not F.is_zero(c):
            inv = F.inv(c)
            return tuple(F.mul(x, inv) for x in raw)
    raise ValueError("the zero triple is not a projective point")


def _cross(F: FieldDescriptor, u: tuple, v: tuple) -> tuple:
    m, s = F.mul, F.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def _dot(F: FieldDescriptor, u: tuple, v: tuple) -> Any:
    return F.add(F.add(F.mul(u[0], v[0]), F.mul(u[1], v[1])), F.mul(u[2], v[2]))


class _Triple:
    __slots__ = ("field", "raw", "label")

    def __init__(self, coords: Sequence[Any], label: str | None = None, *, field: FieldDescriptor | None = None):
        if len(coords) != 3:
            raise ValueError("homogeneous coordinates need exactly three entries")
        F = _field_of(coords, field)
        raw = tuple(F.coerce(c).raw for c in coords)
        self.field = F
        self.raw = _canonical(F, raw)
        self.label = label

    @classmethod
    def _from_raw(cls, F: FieldDescriptor, raw: tuple, label: str | None = None):
        obj = cls.__new__(cls)
        obj.field = F
        obj.raw = _canonical(F, raw)
        obj.label = label
        return obj

    @property
    def coords(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return tuple(FieldElement(self.field, c) for c in self.raw)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.raw[i])

    def __eq__(self, other: Any) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.field == other.field and self.raw == other.raw

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.raw))

    def text(self) -> list[str]:
        return [self.field.format(c) for c in self.raw]

    def with_label(self, label: str | None):
        return type(self)._from_raw(self.field, self.raw, label)

    def in_field(self, F: FieldDescriptor):
        """The same triple viewed in an extension field."""
        return type(self)([F.coerce(c) for c in self.coords], self.label, field=F)

    def __repr__(self) -> str:
        name = f"{self.label}=" if self.label else ""
        return f"{type(self).__name__}({name}{':'.join(self.text())})"


class ProjPoint(_Triple):
    """A point ``(x:y:z)``; stored with its first nonzero coordinate equal to 1."""

    __slots__ = ()

    def __str__(self) -> str:
        return "(" + " : ".join(self.text()) + ")"

    def on(self, line: ProjLine) -> bool:
        _same_field(self, line)
        return self.field.is_zero(_dot(self.field, self.raw, line.raw))


class ProjLine(_Triple):
    """A line ``alpha*x + beta*y + gamma*z = 0``, canonical like points."""

    __slots__ = ()

    def __str__(self) -> str:
        return "[" + " : ".join(self.text()) + "]"

    def contains(self, p: ProjPoint) -> bool:
        return p.on(self)

    def equation(self, names: Sequence[str] = ("x", "y", "z")) -> str:
        parts = []
        F = self.field
        for c, n in zip(self.raw, names):
            if F.is_zero(c):
                continue
            s = F.format(c)
            if s == "1":
                term = n
            elif s == "-1":
                term = "-" + n
            else:
                term = f"({s})*{n}" if any(ch in s[1:] for ch in "+-") else f"{s}*{n}"
            parts.append(term)
        body = " + ".join(parts).replace("+ -", "- ")
        return body + " = 0"


def _same_field(*objs: _Triple) -> FieldDescriptor:
    F = objs[0].field
    for o in objs[1:]:
        if o.field != F:
            raise DescriptorMismatch(f"{o.field.describe()} vs {F.describe()}")
    return F


def _is_zero_triple(F: FieldDescriptor, t: tuple) -> bool:
    return all(F.is_zero(c) for c in t)


def join(p: ProjPoint, q: ProjPoint, label: str | None = None) -> ProjLine:
    """The line through two distinct points."""
    F = _same_field(p, q)
    v = _cross(F, p.raw, q.raw)
    if _is_zero_triple(F, v):
        raise CoincidentPoints(f"{p} and {q} coincide")
    return ProjLine._from_raw(F, v, label)


def meet(l: ProjLine, m: ProjLine, label: str | None = None) -> ProjPoint:
    """The intersection point of two distinct lines."""
    F = _same_field(l, m)
    v = _cross(F, l.raw, m.raw)
    if _is_zero_triple(F, v):
        raise CoincidentLines(f"{l} and {m} coincide")
    return ProjPoint._from_raw(F, v, label)


def det3(F: FieldDescriptor, u: tuple, v: tuple, w: tuple) -> Any:
    return _dot(F, u, _cross(F, v, w))


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    F = _same_field(p, q, r)
    return F.is_zero(det3(F, p.raw, q.raw, r.raw))


def concurrent(l: ProjLine, m: ProjLine, n: ProjLine) -> bool:
    F = _same_field(l, m, n)
    return F.is_zero(det3(F, l.raw, m.raw, n.raw))


# ----------------------------------------------------------------------
# arrangements
# ----------------------------------------------------------------------


@dataclass
class PointRecord:
    point: ProjPoint
    lines: tuple[int, ...]
    label: str | None = None

    @property
    def mult(self) -> int:
        return len(self.lines)


@dataclass
class Configuration:
    """A line arrangement with every pairwise intersection recorded."""

    field: FieldDescriptor
    lines: list[ProjLine]
    points: list[PointRecord]
    census: dict[int, int] = field(default_factory=dict)

    def points_with_mult(self, at_least: int = 3) -> list[PointRecord]:
        return [r for r in self.points if r.mult >= at_least]

    def find(self, p: ProjPoint) -> PointRecord | None:
        for r in self.points:
            if r.point == p:
                return r
        return None

    def line_index(self, l: ProjLine) -> int:
        return self.lines.index(l)

    def check(self) -> None:
        n = len(self.lines)
        total = sum(comb(r.mult, 2) for r in self.points)
        if total != comb(n, 2):
            raise AssertionError(f"pair count {total} != {comb(n, 2)}")
        for r in self.points:
            for i in r.lines:
                if not r.point.on(self.lines[i]):
                    raise AssertionError(f"{r.point} not on line {i}")

    def to_dict(self) -> dict:
        pts = []
        for r in self.points:
            d = {"coords": r.point.text(), "mult": r.mult, "lines": list(r.lines)}
            if r.label:
                d["label"] = r.label
            pts.append(d)
        out = {
            "field": self.field.describe(),
            "lines": [l.text() for l in self.lines],
            "points": pts,
            "census": {str(k): v for k, v in sorted(self.census.items())},
        }
        labels = {l.label: i for i, l in enumerate(self.lines) if l.label}
        if labels:
            out["line_labels"] = labels
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> Configuration:
        try:
            F = parse_field(data["field"])
            names = {i: n for n, i in data.get("line_labels", {}).items()}
            lines = [
                ProjLine([F.parse(c) for c in l], names.get(i), field=F)
                for i, l in enumerate(data["lines"])
            ]
            points = [
                PointRecord(
                    ProjPoint([F.parse(c) for c in p["coords"]], p.get("label"), field=F),
                    tuple(p["lines"]),
                    p.get("label"),
                )
                for p in data["points"]
            ]
            cen = {int(k): v for k, v in data["census"].items()}
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed configuration JSON: {exc}") from exc
        return cls(F, lines, points, cen)

    @classmethod
    def from_json(cls, text: str) -> Configuration:
        return cls.from_dict(json.loads(text))


def census(
    lines: Sequence[ProjLine], labeled_points: Iterable[ProjPoint] = ()
) -> Configuration:
    """Intersect every pair of lines and group the meets by point.

    Points are keyed by their canonical coordinates.  Labels of
    ``labeled_points`` are attached to matching intersection points.
    """
    lines = list(lines)
    if not lines:
        return Configuration(QQ, [], [], {})
    F = _same_field(*lines)
    seen: dict[tuple, int] = {}
    for i, l in enumerate(lines):
        if l.raw in seen:
            raise DuplicateLines(f"lines {seen[l.raw]} and {i} coincide")
        seen[l.raw] = i
    groups: dict[tuple, set[int]] = {}
    order: list[tuple] = []
    for i, j in combinations(range(len(lines)), 2):
        key = _canonical(F, _cross(F, lines[i].raw, lines[j].raw))
        if key not in groups:
            groups[key] = set()
            order.append(key)
        groups[key].update((i, j))
    labels = {p.raw: p.label for p in labeled_points if p.label}
    records = [
        PointRecord(ProjPoint._from_raw(F, k, labels.get(k)), tuple(sorted(groups[k])), labels.get(k))
        for k in order
    ]
    cen = Counter(r.mult for r in records)
    cfg = Configuration(F, lines, records, dict(sorted(cen.items())))
    return cfg


# ----------------------------------------------------------------------
# Pappus: doubly perspective triangles are triply perspective
# ----------------------------------------------------------------------

_SHIFTS = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _center_shift(T1, T2, center: ProjPoint) -> int | None:
    for k, s in enumerate(_SHIFTS):
        if all(collinear(T1[i], T2[s[i]], center) and T1[i] != T2[s[i]] for i in range(3)):
            return k
    return None


def pappus_third_center(
    A: ProjPoint, B: ProjPoint, C: ProjPoint, D: ProjPoint, E: ProjPoint, F: ProjPoint,
    P: ProjPoint, Q: ProjPoint,
) -> ProjPoint:
    """Third perspective center of triangles ABC and DEF.

    P and Q must be centers of two different cyclic correspondences between
    the vertices (A, B, C) and (D, E, F).  The result is the common point of
    the joins realizing the remaining correspondence.
    """
    T1, T2 = (A, B, C), (D, E, F)
    kp = _center_shift(T1, T2, P)
    kq = _center_shift(T1, T2, Q)
    if kp is None or kq is None or kp == kq:
        raise NotDoublyPerspective("the triangles are not perspective from P and Q in two ways")
    (k,) = {0, 1, 2} - {kp, kq}
    s = _SHIFTS[k]
    l0, l1, l2 = (join(T1[i], T2[s[i]]) for i in range(3))
    try:
        R = meet(l0, l1)
    except CoincidentLines as exc:
        raise NotDoublyPerspective("degenerate triangle pair") from exc
    if not R.on(l2):
        raise AssertionError("third perspectivity failed; inputs inconsistent")
    return R
