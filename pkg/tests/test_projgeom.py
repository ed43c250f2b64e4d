import json
import random
from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from boroczky.errors import (
    CoincidentLines,
    CoincidentPoints,
    DescriptorMismatch,
    DuplicateLines,
    NotDoublyPerspective,
)
from boroczky.projgeom import (
    Configuration,
    ProjLine,
    ProjPoint,
    census,
    collinear,
    concurrent,
    join,
    meet,
    pappus_third_center,
)
from boroczky.scalar import QQ, PrimeField, QuadExt

small = st.integers(-6, 6)
triples = st.tuples(small, small, small).filter(lambda t: any(t))


def pt(*c):
    return ProjPoint(list(c))


def test_canonical_form():
    p = ProjPoint([2, 4, 6])
    assert p.text() == ["1", "2", "3"]
    assert ProjPoint([0, -3, 6]) == ProjPoint([0, 1, -2])
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0])


@given(triples, triples)
def test_join_is_cross_product(a, b):
    p, q = pt(*a), pt(*b)
    assume(p != q)
    L = join(p, q)
    ref = sp.Matrix(a).cross(sp.Matrix(b))
    assert ProjLine([Fraction(int(c)) for c in ref]) == L
    assert p.on(L) and q.on(L)


@given(triples, triples)
def test_duality(a, b):
    l, m = ProjLine(list(a)), ProjLine(list(b))
    assume(l != m)
    P = meet(l, m)
    assert P.on(l) and P.on(m)
    assert join(ProjPoint(list(a)), ProjPoint(list(b))).raw == meet(l, m).raw


def test_coincidence_errors():
    with pytest.raises(CoincidentPoints):
        join(pt(1, 2, 3), pt(2, 4, 6))
    with pytest.raises(CoincidentLines):
        meet(ProjLine([1, 1, 0]), ProjLine([-1, -1, 0]))
    with pytest.raises(DescriptorMismatch):
        join(pt(1, 0, 0), ProjPoint([0, 1, 0], field=PrimeField(7)))


def test_collinear_concurrent():
    assert collinear(pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0))
    assert not collinear(pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1))
    assert concurrent(ProjLine([1, 0, 0]), ProjLine([0, 1, 0]), ProjLine([1, 1, 0]))


def _random_lines(rng, n):
    seen, out = set(), []
    while len(out) < n:
        c = [rng.randint(-3, 3) for _ in range(3)]
        if not any(c):
            continue
        L = ProjLine(c)
        if L in seen:
            continue
        seen.add(L)
        out.append(L)
    return out


@pytest.mark.parametrize("seed", range(30))
def test_census_pair_count(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 9)
    cfg = census(_random_lines(rng, n))
    assert sum(comb(k, 2) * c for k, c in cfg.census.items()) == comb(n, 2)
    cfg.check()
    for rec in cfg.points:
        assert all(rec.point.on(cfg.lines[i]) for i in rec.lines)


def test_census_complete_quadrilateral():
    lines = [ProjLine(c) for c in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1])]
    assert census(lines).census == {2: 6}
    lines = [ProjLine(c) for c in ([1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0])]
    assert census(lines).census == {4: 1}
    with pytest.raises(DuplicateLines):
        census([ProjLine([1, 0, 0]), ProjLine([2, 0, 0])])


def test_labels_and_json_round_trip():
    K = QuadExt(QQ, 15)
    s = K.gen()
    lines = [ProjLine([1, 0, 0], "X", field=K), ProjLine([0, 1, 0], "Y", field=K), ProjLine([1, s, 1], "W")]
    cfg = census(lines, [ProjPoint([0, 0, 1], "O", field=K)])
    again = Configuration.from_json(cfg.to_json())
    assert again.to_dict() == cfg.to_dict()
    data = json.loads(cfg.to_json())
    assert data["field"] == "QQ(sqrt(15))"
    assert {p.get("label") for p in data["points"]} >= {"O"}


def test_pappus_third_center():
    A, B, C = pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)
    D, E, F = pt(2, 1, 3), pt(6, -8, -9), pt(16, -8, 9)
    P, Q = pt(2, -1, -3), pt(16, 8, 9)
    assert concurrent(join(A, D), join(B, E), join(C, F))
    assert concurrent(join(A, E), join(B, F), join(C, D))
    R = pappus_third_center(A, B, C, D, E, F, P, Q)
    assert R == pt(6, -8, 9)
    assert R.on(join(A, F)) and R.on(join(B, D)) and R.on(join(C, E))
    with pytest.raises(NotDoublyPerspective):
        pappus_third_center(A, B, C, D, E, F, P, P)
