from fractions import Fraction

import pytest
import sympy
from conftest import scalars
from hypothesis import given
from hypothesis import strategies as st

from leibniz import I, ONE, ZERO, Scalar, TPoly
from leibniz.exactnum import MultiPoly, as_scalar, parse_rational, poly_eval


def to_sympy(s):
    return sympy.Rational(s.re.numerator, s.re.denominator) + sympy.I * sympy.Rational(s.im.numerator, s.im.denominator)


@given(scalars, scalars)
def test_field_ops_match_sympy(a, b):
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    if b:
        assert sympy.simplify(to_sympy(a / b) - to_sympy(a) / to_sympy(b)) == 0


@given(scalars)
def test_inverse_and_conjugate(a):
    if a:
        assert a * a.inv() == ONE
    assert (a * a.conjugate()).is_real()


def test_i_squared():
    assert I * I == -ONE
    assert I ** 4 == ONE
    assert (ONE + I) ** -2 == Scalar(0, Fraction(-1, 2))


@pytest.mark.parametrize("text,value", [
    ("3", Scalar(3)), ("-1/2", Scalar(Fraction(-1, 2))), ("2i", Scalar(0, 2)),
    ("1+i", Scalar(1, 1)), ("1/2-3/4i", Scalar(Fraction(1, 2), Fraction(-3, 4))), ("-i", Scalar(0, -1)),
])
def test_parse(text, value):
    assert Scalar.parse(text) == value


@given(scalars)
def test_text_and_json_round_trip(a):
    assert Scalar.parse(str(a)) == a
    assert Scalar.from_json(a.to_json()) == a


@pytest.mark.parametrize("bad", ["2/4", "1/0", "x", "", "-0"])
def test_rejects_malformed(bad):
    with pytest.raises(ValueError):
        Scalar.parse(bad)


def test_parse_rational_requires_reduced():
    assert parse_rational("-7/3") == Fraction(-7, 3)
    with pytest.raises(ValueError):
        parse_rational("6/4")


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_coercion():
    assert as_scalar(2) == Scalar(2)
    assert as_scalar(Fraction(1, 3)) == Scalar(Fraction(1, 3))
    assert as_scalar(1 + 2j) == Scalar(1, 2)
    with pytest.raises(TypeError):
        as_scalar(object())


@given(st.lists(scalars, max_size=5), st.lists(scalars, max_size=5), scalars)
def test_tpoly_is_a_ring_hom_under_evaluation(p, q, t0):
    a, b = TPoly(p), TPoly(q)
    assert poly_eval(a * b, t0) == poly_eval(a, t0) * poly_eval(b, t0)
    assert (a + b)(t0) == a(t0) + b(t0)


def test_tpoly_normalises_trailing_zeros():
    assert TPoly([ONE, ZERO, ZERO]) == TPoly([ONE])
    assert TPoly([]).degree < 1
    assert TPoly.monomial(Scalar(2), 3).coeff(3) == Scalar(2)
    assert TPoly.monomial(ONE, 3).truncate(2) == TPoly()
    assert TPoly([ZERO, ZERO, ONE]).lowest_power() == 2


def test_multipoly_product_and_evaluation():
    x = MultiPoly.variable(2, 0)
    y = MultiPoly.variable(2, 1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.evaluate([Scalar(3), I]) == Scalar(10)
    assert p.total_degree() == 2
