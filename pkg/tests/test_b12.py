import random
from fractions import Fraction

import pytest
import sympy as sp

from boroczky import b12
from boroczky.errors import GenericParameter, ParseError
from boroczky.b12 import ParameterTriple, build, classify, degeneration_report

# D3 incidences: point -> lines through it, in the column order of the table
D3_TABLE = {
    "A": ["AC", "AB", "AF"],
    "B": ["AB", "BC", "BD"],
    "C": ["AC", "BC", "CP"],
    "D": ["AC", "BD", "ED"],
    "E": ["AB", "EF", "ED", "NG", "CP", "MO"],
    "F": ["BC", "AF", "EF"],
    "G": ["AF", "BD", "NG"],
    "H": ["BD", "EF", "HJ"],
    "I": ["BC", "ED", "IK"],
    "J": ["AF", "ED", "HJ"],
    "K": ["AC", "EF", "IK"],
    "L": ["AB", "HJ", "IK"],
    "M": ["BD", "IK", "MO"],
    "N": ["AC", "HJ", "NG"],
    "O": ["BC", "HJ", "MO"],
    "P": ["AF", "IK", "CP"],
}

# independent sympy join/meet construction
STEPS = [
    ("AB", "A", "B"), ("AC", "A", "C"), ("BC", "B", "C"), ("AF", "A", "F"), ("BD", "B", "D"),
    ("EF", "E", "F"), ("ED", "E", "D"), ("G", "AF", "BD"), ("H", "BD", "EF"), ("I", "BC", "ED"),
    ("J", "AF", "ED"), ("K", "AC", "EF"), ("HJ", "H", "J"), ("IK", "I", "K"), ("L", "HJ", "IK"),
    ("M", "BD", "IK"), ("N", "AC", "HJ"), ("O", "HJ", "BC"), ("P", "AF", "IK"), ("NG", "N", "G"),
    ("CP", "C", "P"), ("Q", "EF", "NG"), ("R", "ED", "CP"), ("S", "CP", "NG"), ("MO", "M", "O"),
]  # fmt: skip


def sympy_construction(a1, a2, b1, b2, c1, c2):
    obj = {
        "A": sp.Matrix([1, 0, 0]), "B": sp.Matrix([0, 1, 0]), "C": sp.Matrix([0, 0, 1]),
        "D": sp.Matrix([a2, 0, a1]), "E": sp.Matrix([b1, b2, 0]), "F": sp.Matrix([0, c1, c2]),
    }  # fmt: skip
    for name, u, v in STEPS:
        obj[name] = obj[u].cross(obj[v])
    return obj


def same_projective(v, triple):
    w = sp.Matrix([sp.Rational(x.raw.numerator, x.raw.denominator) for x in triple.coords])
    return v.cross(w) == sp.zeros(3, 1) and any(v)


@pytest.mark.parametrize("seed", range(5))
def test_build_matches_sympy_construction(seed):
    rng = random.Random(seed)
    m = b12.random_generic(rng)
    vals = [sp.Rational(x.raw.numerator, x.raw.denominator) for x in m.values()]
    ref = sympy_construction(*vals)
    res = build(m)
    for name in b12.POINT_NAMES:
        assert same_projective(ref[name], res.points[name]), name
    for name in b12.LINE_NAMES:
        assert same_projective(ref[name], res.lines[name]), name


def test_generic_census_and_special_points():
    res = build(ParameterTriple.parse("1/1,1/2,1/3"))
    cfg = res.configuration
    assert cfg.census == {3: 19, 2: 9}
    assert len(cfg.lines) == 12
    assert str(res.points["L"]) == "(1 : -12 : 0)"
    assert str(res.points["S"]) == "(1 : -12/7 : 0)"
    assert all(res.multiplicity(p) == 3 for p in b12.POINT_NAMES)


def test_parse_forms_agree():
    a = ParameterTriple.parse("1/1,1/2,1/3")
    b = ParameterTriple.parse("(1:1),(1:2),(1:3)")
    c = ParameterTriple.of((2, 2), (3, 6), (-1, -3))
    assert a == b == c
    assert ParameterTriple.parse("1,2/1,3").a == ParameterTriple.parse("(1:1),(2:1),(3:1)").a
    for bad in ("1/1,1/2", "(1:1),(1:2)", "(0:0),(1:1),(1:1)", "x,1,1"):
        with pytest.raises(ParseError):
            ParameterTriple.parse(bad)


def test_rescaling_invariance():
    m = ParameterTriple.parse("2/3,5/7,-4/9")
    ref = build(m).configuration.to_dict()
    for lam in ((2, 3, 5), (-1, Fraction(1, 7), 11)):
        other = ParameterTriple.of(*m.rescaled(*lam))
        assert build(other).configuration.to_dict() == ref


def test_symbolic_identities():
    rep = b12.verify_symbolic_identities()
    assert set(rep.values) == {"L_z", "S_z", "det_MOQ", "det_MOR"}
    assert all(v.is_zero() for v in rep.values.values())
    assert rep.ok


@pytest.mark.parametrize(
    "tag,lines,census",
    [
        ("D1Smooth", 7, {3: 6, 2: 3}),
        ("D1Double", 4, {3: 1, 2: 3}),
        ("D1Triple", 3, {2: 3}),
        ("D2Menelaus", 6, {3: 4, 2: 3}),
        ("D3Sextuple", 12, {6: 1, 3: 15, 2: 6}),
        ("D1D2D3Locus", 4, {3: 1, 2: 3}),
    ],
)
def test_degenerations(tag, lines, census):
    m = b12.sample_parameters()[tag]
    assert classify(m).tag == tag
    res = build(m)
    assert len(res.configuration.lines) == lines
    assert res.configuration.census == census


def test_d3_table():
    rep = degeneration_report(b12.sample_parameters()["D3Sextuple"])
    assert rep.incidence == D3_TABLE
    assert rep.coincident == [["E", "Q", "R", "S"]]
    assert rep.result.multiplicity("E") == 6
    assert rep.extra_collinear == ["AHI"]


def test_degeneration_report_rejects_generic():
    with pytest.raises(GenericParameter):
        degeneration_report(b12.sample_parameters()["Generic"])


def test_classification_conditions():
    assert classify(ParameterTriple.of((1, 1), (1, 2), (1, 3))).generic
    assert classify(ParameterTriple.of((1, 0), (1, 1), (1, 1))).tag.startswith("D1")
    # u = a1*b1*c1, v = a2*b2*c2: u + v = 0 is Menelaus, u + 2v = 0 the sextuple point
    assert classify(ParameterTriple.of((3, 1), (1, 1), (-1, 3))).tag == "D2Menelaus"
    assert classify(ParameterTriple.of((3, 1), (2, 1), (-1, 3))).tag == "D3Sextuple"


def test_scan_grid():
    recs = list(b12.scan([(0, 1), (1, 1), (2, 1), (-1, 1)]))
    assert len(recs) == 64
    for r in recs:
        if r.cls.generic:
            assert r.census == {2: 9, 3: 19}


@pytest.mark.slow
def test_symbolic_build():
    res = build(b12.symbolic_parameters())
    assert res.configuration.census == {3: 19, 2: 9}
