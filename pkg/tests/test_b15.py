from fractions import Fraction

import pytest
import sympy as sp

from boroczky import b15
from boroczky.errors import ForbiddenA, ParameterInvalid
from boroczky.scalar import QQ, QuadExt

a_, b_ = sp.symbols("a b")
F_SYM = a_**4 * b_ - a_**2 * b_**2 - a_**3 + a_**2 * b_ - a_ * b_**2 + b_**2


def sym(p):
    return sp.sympify(str(p).replace("^", "**"), locals={"a": a_, "b": b_})


def vanishes_mod_f(expr):
    num = sp.numer(sp.together(sp.expand(expr)))
    K = sp.QQ.frac_field(a_)
    return sp.rem(sp.Poly(num, b_, domain=K), sp.Poly(F_SYM, b_, domain=K)).is_zero


def test_closed_forms_incidences_with_sympy():
    pts = b15.closed_form_points(a_, b_)
    lines = b15.closed_form_lines(a_, b_)
    through = {k: [] for k in pts}
    for name, L in lines.items():
        for k, P in pts.items():
            if vanishes_mod_f(sum(x * y for x, y in zip(L, P))):
                through[k].append(name)
    assert all(len(v) == 3 for v in through.values()), {k: v for k, v in through.items() if len(v) != 3}
    assert "P18P20" in through[18] and "P18P20" in through[20]


def test_condition_ideal_against_sympy():
    polys = [sym(p) for p in b15.condition_polynomials()]
    G = sp.groebner(polys, a_, b_, order="grevlex", domain=sp.QQ)
    assert len(G.exprs) == 1
    ci = b15.derive_condition_ideal()
    assert sp.simplify(sym(ci.generator) / G.exprs[0]).is_number
    assert str(ci) == "(a-1)^2 * (a^4*b - a^2*b^2 - a^3 + a^2*b - a*b^2 + b^2)"
    assert sp.simplify(G.exprs[0] / ((a_ - 1) ** 2 * F_SYM)).is_number


def test_facts_vanish_identically():
    assert all(p.is_zero() for p in b15.fact_polynomials().values())


def test_stripped_conditions_divisible_by_f():
    names = {n for n, _ in b15.excluded_factors()}
    for s in b15.stripped_conditions():
        assert s.divisible_by_f, s.name
        assert set(s.stripped) <= names
        assert s.stripped.get("a - 1", 0) >= 2


def test_b_candidates_match_sympy():
    disc, cands = b15.b_candidates(2)
    assert disc == 240
    roots = sp.solve(F_SYM.subs(a_, 2), b_)
    K = QuadExt(QQ, 15)
    for bv, reason in cands:
        assert reason is None and bv.field == K
        u, v = bv.raw
        val = sp.Rational(u.numerator, u.denominator) + sp.Rational(v.numerator, v.denominator) * sp.sqrt(15)
        assert any(sp.simplify(val - r) == 0 for r in roots)


@pytest.mark.parametrize("a", [2, 3, -2, Fraction(1, 2), Fraction(5, 3)])
def test_numeric_builds(a):
    for params in b15.solve_b(a):
        res = b15.build(params)
        cfg = res.configuration
        assert len(cfg.lines) == 15
        assert cfg.census == {3: 31, 2: 12}
        assert all(res.facts.values())
        assert all(res.conditions)


def test_parameter_validation():
    K = QuadExt(QQ, 15)
    with pytest.raises(ForbiddenA):
        b15.B15Parameters(K.coerce(1), K.gen())
    with pytest.raises(ParameterInvalid):
        b15.B15Parameters(K.coerce(2), K.gen())
    with pytest.raises(ForbiddenA):
        b15.b_candidates(0)


@pytest.mark.parametrize(
    "a,reason",
    [
        (2, "discriminant 240 not a rational square"),
        (-1, "b = -1 = a forbidden"),
        (0, "a = 0 forbidden"),
        (1, "a = 1 forbidden"),
    ],
)
def test_attempt_rational(a, reason):
    att = b15.attempt_rational(a)
    assert not att.valid
    assert att.reason == reason


@pytest.mark.slow
def test_symbolic_build():
    res = b15.build(b15.symbolic_parameters())
    assert all(res.facts.values()) and all(res.conditions)
    assert len(res.configuration.lines) == 15
