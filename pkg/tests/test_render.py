import re
import xml.etree.ElementTree as ET
from decimal import Decimal

import pytest

from boroczky import b12, b15
from boroczky.errors import ChartDegenerate, EmptyWindow
from boroczky.projgeom import ProjLine, census
from boroczky.render import render, to_decimal
from boroczky.scalar import QQ, QuadExt

NS = {"s": "http://www.w3.org/2000/svg"}


def triangle():
    return census([ProjLine([1, 0, 0], "x"), ProjLine([0, 1, 0], "y"), ProjLine([0, 0, 1], "z")])


def svg_parts(doc):
    root = ET.fromstring(doc)
    segs = {l.get("id"): tuple(Decimal(l.get(k)) for k in ("x1", "y1", "x2", "y2")) for l in root.iter("{%s}line" % NS["s"])}
    circles = list(root.iter("{%s}circle" % NS["s"]))
    texts = [t.text for t in root.iter("{%s}text" % NS["s"])]
    return segs, circles, texts


def test_triangle_legend():
    doc = render(triangle(), "z=1", (-2, 2, -2, 2))
    segs, circles, texts = svg_parts(doc)
    assert set(segs) == {"x", "y"}
    assert "line at infinity: z" in texts
    assert circles == []


def _marker_check(cfg, doc):
    segs, circles, texts = svg_parts(doc)
    labels = [t for t in texts if not t.startswith(("line at infinity", "outside window"))]
    assert len(labels) == len(circles)
    names = [l.label for l in cfg.lines]
    by_label = {(r.label or str(k)): r for k, r in enumerate(cfg.points)}
    for c, lab in zip(circles, labels):
        px, py = Decimal(c.get("cx")), Decimal(c.get("cy"))
        for i in by_label[lab].lines:
            x1, y1, x2, y2 = segs[names[i]]
            cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
            length = ((x2 - x1) ** 2 + (y2 - y1) ** 2).sqrt()
            assert abs(cross) / length < Decimal("1e-9"), (lab, names[i])


def test_generic_b12():
    cfg = b12.build(b12.sample_parameters()["Generic"]).configuration
    doc = render(cfg)
    segs, circles, _ = svg_parts(doc)
    assert len(segs) == 12
    assert len(circles) == 19
    _marker_check(cfg, doc)
    assert render(cfg) == doc


def test_b15_over_quadratic_field():
    cfg = b15.build(b15.solve_b(2)[0]).configuration
    doc = render(cfg)
    segs, circles, _ = svg_parts(doc)
    assert (len(segs), len(circles)) == (15, 31)
    _marker_check(cfg, doc)


def test_tikz_body():
    cfg = b12.build(b12.sample_parameters()["Generic"]).configuration
    doc = render(cfg, fmt="tikz")
    assert doc.count("\\draw [line width=1pt]") == 12
    assert doc.count("\\fill") == 19
    assert doc.startswith("%") and "\\begin{tikzpicture}" in doc and doc.rstrip().endswith("\\end{tikzpicture}")
    assert re.search(r"node\[anchor=south west\] \{\$A\$\}", doc)


def test_sqrt_precision():
    K = QuadExt(QQ, 15)
    v = to_decimal(K.gen())
    assert str(v).startswith("3.87298334620741688517926539978")
    assert len(v.as_tuple().digits) == 30


def test_errors():
    with pytest.raises(EmptyWindow):
        render(triangle(), "z=1", (1, 1, 0, 2))
    with pytest.raises(ChartDegenerate):
        render(triangle(), "0,0,0")
    with pytest.raises(ChartDegenerate):
        render(census([ProjLine([0, 0, 1])]), "z=1")


def test_custom_chart():
    cfg = b12.build(b12.sample_parameters()["Generic"]).configuration
    a = render(cfg, "1,1,1")
    b = render(cfg, [1, 1, 1])
    assert a == b
