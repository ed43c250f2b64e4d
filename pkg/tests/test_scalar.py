from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from boroczky.errors import DescriptorMismatch, DivisionByZero, InvalidField, ParseError, UnsupportedField
from boroczky.scalar import (
    QQ,
    FunctionField,
    PrimeField,
    QuadExt,
    QuotientExt,
    adjoin_sqrt,
    arith,
    is_square,
    parse_field,
    reduce_in_quotient,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**4)
Q15 = QuadExt(QQ, 15)
GF7 = PrimeField(7)
GF49 = QuotientExt(GF7, "t^2 + 1", "t")


def _sym(x):
    """sympy value of a QQ or QQ(sqrt d) element."""
    if x.field == QQ:
        return sp.Rational(x.raw.numerator, x.raw.denominator)
    u, v = x.raw
    return sp.Rational(u.numerator, u.denominator) + sp.Rational(v.numerator, v.denominator) * sp.sqrt(
        int(x.field.d)
    )


@given(fractions, fractions, fractions, fractions)
def test_quadratic_product_matches_sympy(a, b, c, d):
    x = Q15.coerce(a) + Q15.coerce(b) * Q15.gen()
    y = Q15.coerce(c) + Q15.coerce(d) * Q15.gen()
    assert sp.expand(_sym(x * y) - _sym(x) * _sym(y)) == 0
    assert sp.expand(_sym(x + y) - _sym(x) - _sym(y)) == 0
    if not y.is_zero():
        assert sp.simplify(_sym(x / y) - _sym(x) / _sym(y)) == 0


def test_quadratic_example_value():
    s = Q15.gen()
    assert (1 + s) * (1 - s) / 5 == Q15.coerce(Fraction(-14, 5))
    y = (2 * s / 5) * (s / 3)
    assert y == Q15.coerce(2)
    assert (s * 2 / 5) * (s * 4 / 15) == Q15.coerce(Fraction(8, 5))


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_prime_field_inverse_matches_sympy(p_idx, a):
    p = sp.prime(p_idx % 2000 + 1)
    F = PrimeField(p)
    if a % p == 0:
        with pytest.raises(DivisionByZero):
            F.coerce(a).inverse()
        return
    assert F.coerce(a).inverse().raw == sp.mod_inverse(a, p)


def test_prime_field_rejects_composite():
    with pytest.raises(InvalidField):
        PrimeField(15)


@settings(max_examples=200)
@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    x, y, z = QQ.coerce(a), QQ.coerce(b), QQ.coerce(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == 1


def test_sqrt_normalization():
    K, s = adjoin_sqrt(QQ, Fraction(60))
    assert K == Q15
    assert s * s == K.coerce(60)
    with pytest.raises(InvalidField):
        QuadExt(QQ, 16)
    with pytest.raises(InvalidField):
        QuadExt(QQ, 0)


def test_is_square():
    assert is_square(QQ.coerce(Fraction(9, 4))) == QQ.coerce(Fraction(3, 2))
    assert is_square(QQ.coerce(240)) is None
    assert is_square(GF7.coerce(2)).raw in (3, 4)
    with pytest.raises(UnsupportedField):
        is_square(Q15.gen())


def test_quotient_extension_arithmetic():
    t = GF49.gen()
    assert t * t == GF49.coerce(-1)
    assert (t + 1) * (t + 1).inverse() == 1
    assert reduce_in_quotient("t^3", GF49) == -t
    with pytest.raises(InvalidField):
        QuotientExt(GF7, "t^2 + 6", "t")  # t^2 - 1 is reducible


def test_function_field_and_tower():
    K = FunctionField(QQ, "a")
    a = K.gen()
    x = (a * a - 1) / (a - 1)
    assert x == a + 1
    L = QuotientExt(K, "a^4*b - a^2*b^2 - a^3 + a^2*b - a*b^2 + b^2", "b")
    A, b = L.coerce(a), L.gen()
    f = A**4 * b - A**2 * b * b - A**3 + A**2 * b - A * b * b + b * b
    assert f.is_zero()
    assert b * b.inverse() == 1


def test_descriptor_mismatch_and_arith():
    with pytest.raises(DescriptorMismatch):
        arith(QQ.coerce(1), GF7.coerce(1), "add")
    assert arith(GF7.coerce(3), GF7.coerce(5), "mul").raw == 1
    with pytest.raises(DivisionByZero):
        QQ.coerce(1) / 0


@pytest.mark.parametrize(
    "F",
    [QQ, GF7, Q15, GF49, FunctionField(QQ, "a"), QuadExt(GF7, 3)],
    ids=lambda F: F.describe(),
)
def test_parse_field_round_trip(F):
    assert parse_field(F.describe()) == F


def test_parse_errors():
    with pytest.raises(ParseError):
        QQ.parse("1/")
    with pytest.raises(ParseError):
        parse_field("RR")


@given(fractions, fractions)
def test_element_text_round_trip(a, b):
    x = Q15.coerce(a) + Q15.coerce(b) * Q15.gen()
    assert Q15.parse(Q15.format(x.raw)) == x
