"""SVG and TikZ pictures of line arrangements in an affine chart.

Geometry is taken from the configuration as is: the renderer never
intersects lines itself.  Exact coordinates are converted to decimals only
when written out (square roots at 30 significant digits).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from .errors import ChartDegenerate, EmptyWindow, UnsupportedField
from .projgeom import Configuration, ProjLine
from .scalar import FieldDescriptor, FieldElement, PrimeField, QuadExt, Rationals

PREC = 30
MARGIN = Decimal("0.15")
CHARTS = {"z=1": (0, 0, 1), "y=1": (0, 1, 0), "x=1": (1, 0, 0)}


def to_decimal(x: FieldElement) -> Decimal:
    """Decimal value of a rational or real-quadratic element."""
    F = x.field
    with localcontext() as ctx:
        ctx.prec = PREC
        if isinstance(F, Rationals):
            return Decimal(x.raw.numerator) / Decimal(x.raw.denominator)
        if isinstance(F, QuadExt) and isinstance(F.base, Rationals):
            u, v = x.raw
            if F.d < 0:
                raise UnsupportedField("complex quadratic field cannot be drawn")
            root = Decimal(F.d.numerator).sqrt() / Decimal(F.d.denominator).sqrt()
            return Decimal(u.numerator) / Decimal(u.denominator) + (
                Decimal(v.numerator) / Decimal(v.denominator)
            ) * root
    raise UnsupportedField(f"no real embedding chosen for {F.describe()}")


def _chart_matrix(F: FieldDescriptor, h: Sequence[Any]) -> list[list[FieldElement]]:
    h = [F.coerce(c) for c in h]
    if all(c.is_zero() for c in h):
        raise ChartDegenerate("the chart form is zero")
    e = [[F.coerce(int(i == j)) for j in range(3)] for i in range(3)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        rows = [e[i], e[j], h]
        d = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        if not d.is_zero():
            return rows
    raise ChartDegenerate("cannot complete the chart form to a basis")


def _inverse_transpose(A: list[list[FieldElement]]) -> list[list[FieldElement]]:
    (a, b, c), (d, e, f), (g, h, i) = A
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    cof = [
        [e * i - f * h, -(d * i - f * g), d * h - e * g],
        [-(b * i - c * h), a * i - c * g, -(a * h - b * g)],
        [b * f - c * e, -(a * f - c * d), a * e - b * d],
    ]
    return [[x / det for x in row] for row in cof]


@dataclass
class Chart:
    """Affine coordinates ``(l1/h, l2/h)`` with h the chart form."""

    rows: list[list[FieldElement]]
    name: str

    def point(self, coords: Sequence[FieldElement]) -> tuple[FieldElement, FieldElement] | None:
        l1, l2, h = ([sum((r * c for r, c in zip(row, coords)), coords[0] * 0) for row in self.rows])
        if h.is_zero():
            return None
        return l1 / h, l2 / h

    def line(self, L: ProjLine) -> tuple[FieldElement, FieldElement, FieldElement] | None:
        """``(alpha, beta, gamma)`` with ``alpha*u + beta*v + gamma = 0``, None at infinity."""
        IT = _inverse_transpose(self.rows)
        al, be, ga = (sum((r * c for r, c in zip(row, L.coords)), L.coords[0] * 0) for row in IT)
        if al.is_zero() and be.is_zero():
            return None
        return al, be, ga


def _auto_forms():
    yield from CHARTS.values()
    for t in range(1, 6):
        for h in ((1, 1, 1), (1, t, t * t), (t, 1, t * t), (1, -t, t * t)):
            yield h


def auto_chart(cfg: Configuration, min_mult: int = 3) -> Chart:
    """First small form putting no line and no drawn point at infinity."""
    F = cfg.field
    for h in _auto_forms():
        ch = Chart(_chart_matrix(F, h), ",".join(map(str, h)))
        if any(ch.line(L) is None for L in cfg.lines):
            continue
        if any(ch.point(r.point.coords) is None for r in cfg.points if r.mult >= min_mult):
            continue
        return ch
    raise ChartDegenerate("no small chart keeps every line finite")


def make_chart(F: FieldDescriptor, chart: str | Sequence[Any]) -> Chart:
    if isinstance(chart, str):
        key = chart.replace(" ", "")
        if key in CHARTS:
            return Chart(_chart_matrix(F, CHARTS[key]), key)
        parts = [p for p in key.split(",") if p]
        if len(parts) != 3:
            raise ChartDegenerate(f"unknown chart {chart!r}")
        h = [F.parse(p) for p in parts]
        return Chart(_chart_matrix(F, h), key)
    return Chart(_chart_matrix(F, chart), ",".join(str(c) for c in chart))


@dataclass
class Window:
    xmin: Decimal
    xmax: Decimal
    ymin: Decimal
    ymax: Decimal

    def __post_init__(self):
        self.xmin, self.xmax, self.ymin, self.ymax = (
            Decimal(str(v)) if not isinstance(v, Decimal) else v
            for v in (self.xmin, self.xmax, self.ymin, self.ymax)
        )
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise EmptyWindow("window must have positive width and height")

    @property
    def size(self) -> Decimal:
        return max(self.xmax - self.xmin, self.ymax - self.ymin)


def _clip(al: Decimal, be: Decimal, ga: Decimal, w: Window) -> tuple | None:
    """Segment of ``al*u + be*v + ga = 0`` inside the window."""
    pts = []
    with localcontext() as ctx:
        ctx.prec = PREC
        if be != 0:
            for u in (w.xmin, w.xmax):
                v = -(al * u + ga) / be
                if w.ymin <= v <= w.ymax:
                    pts.append((u, v))
        if al != 0:
            for v in (w.ymin, w.ymax):
                u = -(be * v + ga) / al
                if w.xmin <= u <= w.xmax:
                    pts.append((u, v))
    uniq = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > Decimal("1e-20") for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


def _fmt(x: Decimal, places: int = 12) -> str:
    q = Decimal(1).scaleb(-places)
    s = format(x.quantize(q), "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class Scene:
    segments: list[tuple[str, tuple, tuple]]
    at_infinity: list[str]
    invisible: list[str]
    points: list[tuple[str, Decimal, Decimal, int]]
    window: Window


def scene(cfg: Configuration, chart: str | Sequence[Any] = "auto", window: Window | None = None, min_mult: int = 3) -> Scene:
    F = cfg.field
    if isinstance(F, PrimeField):
        raise UnsupportedField("finite-field configurations cannot be drawn")
    ch = auto_chart(cfg, min_mult) if chart == "auto" else make_chart(F, chart)
    exact_lines = []
    at_inf = []
    for i, L in enumerate(cfg.lines):
        name = L.label or f"l{i}"
        eq = ch.line(L)
        if eq is None:
            at_inf.append(name)
        else:
            exact_lines.append((name, eq))
    if not exact_lines:
        raise ChartDegenerate("every line of the configuration is at infinity in this chart")
    pts = []
    for k, rec in enumerate(cfg.points):
        if rec.mult < min_mult:
            continue
        uv = ch.point(rec.point.coords)
        if uv is None:
            continue
        pts.append((rec.label or str(k), to_decimal(uv[0]), to_decimal(uv[1]), rec.mult))
    if window is None:
        window = _auto_window(pts)
    segs, hidden = [], []
    for name, (al, be, ga) in exact_lines:
        seg = _clip(to_decimal(al), to_decimal(be), to_decimal(ga), window)
        if seg is None:
            hidden.append(name)
        else:
            segs.append((name, seg[0], seg[1]))
    inside = [p for p in pts if window.xmin <= p[1] <= window.xmax and window.ymin <= p[2] <= window.ymax]
    return Scene(segs, at_inf, hidden, inside, window)


def _auto_window(pts: list) -> Window:
    if not pts:
        return Window(Decimal(-1), Decimal(1), Decimal(-1), Decimal(1))
    xs = [p[1] for p in pts]
    ys = [p[2] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, Decimal(1))
    mx = (x1 - x0 if x1 > x0 else span) * MARGIN
    my = (y1 - y0 if y1 > y0 else span) * MARGIN
    return Window(x0 - mx, x1 + mx, y0 - my, y1 + my)


def _svg(sc: Scene, title: str) -> str:
    w = sc.window
    width, height = w.xmax - w.xmin, w.ymax - w.ymin
    unit = sc.window.size / 400
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width / unit, 2)}" height="{_fmt(height / unit, 2)}" '
        f'viewBox="{_fmt(w.xmin)} {_fmt(-w.ymax)} {_fmt(width)} {_fmt(height)}">',
        f"<title>{title}</title>",
        f'<g stroke="black" stroke-width="{_fmt(unit)}" stroke-linecap="round" fill="none">',
    ]
    for name, (u1, v1), (u2, v2) in sc.segments:
        out.append(
            f'<line id="{name}" x1="{_fmt(u1)}" y1="{_fmt(-v1)}" x2="{_fmt(u2)}" y2="{_fmt(-v2)}"/>'
        )
    out.append("</g>")
    out.append('<g fill="black">')
    for label, u, v, mult in sc.points:
        out.append(f'<circle cx="{_fmt(u)}" cy="{_fmt(-v)}" r="{_fmt(unit * 3)}" data-mult="{mult}"/>')
        out.append(
            f'<text x="{_fmt(u + unit * 4)}" y="{_fmt(-v - unit * 4)}" '
            f'font-size="{_fmt(unit * 12)}">{label}</text>'
        )
    out.append("</g>")
    if sc.at_infinity or sc.invisible:
        out.append(f'<g font-size="{_fmt(unit * 11)}" fill="gray">')
        y = -w.ymax + unit * 14
        for name in sc.at_infinity:
            out.append(f'<text x="{_fmt(w.xmin + unit * 4)}" y="{_fmt(y)}">line at infinity: {name}</text>')
            y += unit * 14
        for name in sc.invisible:
            out.append(f'<text x="{_fmt(w.xmin + unit * 4)}" y="{_fmt(y)}">outside window: {name}</text>')
            y += unit * 14
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _tikz(sc: Scene, title: str) -> str:
    w = sc.window
    scale = Decimal(10) / w.size
    out = [
        f"% {title}",
        f"\\begin{{tikzpicture}}[line cap=round,line join=round,x=1.0cm,y=1.0cm,scale={_fmt(scale, 6)}]",
        f"\\clip({_fmt(w.xmin)},{_fmt(w.ymin)}) rectangle ({_fmt(w.xmax)},{_fmt(w.ymax)});",
    ]
    for name, (u1, v1), (u2, v2) in sc.segments:
        out.append(f"\\draw [line width=1pt] ({_fmt(u1)},{_fmt(v1)})-- ({_fmt(u2)},{_fmt(v2)}); % {name}")
    for label, u, v, _ in sc.points:
        out.append(f"\\fill [color=black] ({_fmt(u)},{_fmt(v)}) circle (2.5pt);")
        out.append(f"\\draw[color=black] ({_fmt(u)},{_fmt(v)}) node[anchor=south west] {{${label}$}};")
    for name in sc.at_infinity:
        out.append(f"% line at infinity: {name}")
    for name in sc.invisible:
        out.append(f"% outside window: {name}")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"


def render(
    cfg: Configuration,
    chart: str | Sequence[Any] = "auto",
    window: Window | Sequence[Any] | None = None,
    fmt: str = "svg",
    title: str = "configuration",
) -> str:
    """Draw ``cfg``: clipped lines, labelled points of multiplicity >= 3.

    ``chart`` is "z=1", "y=1", "x=1", a custom form "h0,h1,h2" (or a
    sequence), or "auto" for the first small form leaving every line finite.
    """
    if window is not None and not isinstance(window, Window):
        window = Window(*window)
    sc = scene(cfg, chart, window)
    if fmt == "svg":
        return _svg(sc, title)
    if fmt == "tikz":
        return _tikz(sc, title)
    raise ValueError(f"unknown format {fmt!r}")
