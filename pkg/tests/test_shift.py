import random
from fractions import Fraction

import pytest

from coulombkit.fraction import RestrictedFraction
from coulombkit.poly import Poly
from coulombkit.quiver import ValuedQuiver
from coulombkit.shift import (INHOMOGENEOUS, AdmissibilityError, Ambient, ShiftOperator, apply_sigma,
                              random_operator)

Q = ValuedQuiver.build([[2, -1], [-2, 2]], d=(2, 1), arrows=[("2", "1")], v=(2, 1), w=(1, 1))
AMB = Ambient.from_quiver(Q)
H = AMB.hbar()


def P(text):
    return Poly.parse(text)


def test_basic_products():
    u, w = AMB.u(1, 1), AMB.w(1, 1)
    assert u * w == (w + H * 2) * u
    assert u * AMB.w(2, 1) == AMB.w(2, 1) * u
    assert u * AMB.u(1, 1, -1) == AMB.scalar(1)


def test_commutation_relations_all_indices():
    slots = [("1", 1), ("1", 2), ("2", 1)]
    for (i, r) in slots:
        for sign in (1, -1):
            u = AMB.u(i, r, sign)
            for (j, s) in slots:
                comm = u.commutator(AMB.w(j, s))
                expected = u * (H * (sign * AMB.sym(i))) if (i, r) == (j, s) else AMB.zero()
                assert comm == expected


def test_t_and_h_are_central():
    for (i, r) in [("1", 1), ("1", 2), ("2", 1)]:
        u = AMB.u(i, r)
        assert u.commutator(AMB.t(1)).is_zero()
        assert u.commutator(H).is_zero()


def test_associativity_random():
    rng = random.Random(7)
    for _ in range(100):
        x, y, z = (random_operator(AMB, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_grade():
    assert (AMB.w(1, 1) * AMB.u(1, 1)).grade() == 1
    atom = P("w[1,1] - w[1,2] + 4*h")
    x = AMB.monomial(RestrictedFraction(1, [(atom, 1)]), {("1", 1): 1})
    assert x.grade() == -1
    assert (AMB.w(1, 1) + H * H).grade() == INHOMOGENEOUS


def test_grade_is_additive():
    rng = random.Random(3)
    for _ in range(30):
        x, y = random_operator(AMB, rng), random_operator(AMB, rng)
        gx, gy, gxy = x.grade(), y.grade(), (x * y).grade()
        if isinstance(gx, int) and isinstance(gy, int) and not (x * y).is_zero():
            assert gxy == gx + gy


def test_inadmissible_denominator_rejected():
    with pytest.raises(AdmissibilityError):
        AMB.monomial(RestrictedFraction(1, [(P("w[1,1] - w[2,1]"), 1)]), {})
    with pytest.raises(AdmissibilityError):
        AMB.monomial(RestrictedFraction(1, [(P("w[1,1] - w[1,2] + h"), 1)]), {})


def test_sigma():
    w = AMB.w(1, 1)
    assert apply_sigma(w, {"1": -2, "2": 0}) == w - H * 2
    assert apply_sigma(AMB.t(2), {"1": 0, "2": 3}) == AMB.t(2) + H * 3
    rng = random.Random(11)
    for _ in range(50):
        x, y = random_operator(AMB, rng), random_operator(AMB, rng)
        sigma = {"1": Fraction(rng.randint(-4, 4), 2), "2": rng.randint(-3, 3)}
        assert apply_sigma(x * y, sigma) == apply_sigma(x, sigma) * apply_sigma(y, sigma)
        if isinstance(x.grade(), int):
            assert apply_sigma(x, sigma).grade() == x.grade()
    assert apply_sigma(x, {"1": 0, "2": 0}) == x


def test_text_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        x = random_operator(AMB, rng)
        assert ShiftOperator.parse(AMB, str(x)) == x
    assert str(ShiftOperator.parse(AMB, "(w[1,1] + 2*h) * u[1,1]^-1 u[2,1]^2")) == \
        "(2*h + w[1,1]) * u[1,1]^-1 u[2,1]^2"


def test_divide_by_hbar():
    x = AMB.scalar(P("h*w[1,1]"))
    assert x.divide_by_hbar() == AMB.w(1, 1)
    with pytest.raises(ArithmeticError):
        AMB.w(1, 1).divide_by_hbar()
