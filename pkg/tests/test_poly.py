from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from coulombkit.poly import HBAR, Poly, UnknownVariableError, poly_shift_substitute

NAMES = ["w1", "w2", "h"]


def P(text):
    return Poly.parse(text)


@st.composite
def polys(draw, max_terms=4):
    out = Poly()
    for _ in range(draw(st.integers(0, max_terms))):
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        mono = Poly.const(c)
        for name in NAMES:
            mono = mono * Poly.var(name) ** draw(st.integers(0, 2))
        out = out + mono
    return out


def to_sympy(p: Poly):
    syms = {n: sympy.Symbol(n) for n in NAMES}
    return sum((sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c)
               * sympy.Mul(*[syms[v] ** e for v, e in m]) for m, c in p.items())


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a - a == Poly()


@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


def test_zero_is_empty_and_no_zero_coefficients():
    p = P("w1 + w2") - P("w2")
    assert p.terms == {(("w1", 1),): 1}
    assert (P("w1") - P("w1")).terms == {}


def test_shift_substitute_examples():
    h = Poly.var(HBAR)
    assert poly_shift_substitute(P("w"), {"w": 2}) == P("w") + 2 * h
    assert poly_shift_substitute(P("w^2"), {"w": 1}) == P("w^2 + 2*w*h + h^2")
    assert poly_shift_substitute(P("w1*w2"), {"w1": 3}) == P("w1*w2 + 3*h*w2")


def test_shift_substitute_rejects_unknown_variable():
    with pytest.raises(UnknownVariableError):
        poly_shift_substitute(P("w1"), {"w9": 1}, known={"w1", "h"})


def test_half_integer_shift():
    assert poly_shift_substitute(P("w"), {"w": Fraction(-1, 2)}) == P("w - 1/2*h")


@given(polys())
def test_text_round_trip(p):
    assert Poly.parse(str(p)) == p


def test_printing_is_deterministic():
    assert str(P("w2^2 + w1^2 - 2*w1*w2")) == "-2*w1*w2 + w1^2 + w2^2"


def test_divide_linear():
    p = P("(w1 - w2)^2 + h*(w1 - w2)")
    assert p.divide_linear(P("w1 - w2")) == P("w1 - w2 + h")
    assert P("w1 + 1").divide_linear(P("w1 - w2")) is None


def test_homogeneity_and_degree():
    assert P("w1*h + w2^2").is_homogeneous()
    assert not P("w1 + h^2").is_homogeneous()
    assert P("w1*h + w2^2").degree() == 2
