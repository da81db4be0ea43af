import pytest
from hypothesis import given, strategies as st

from coulombkit.series import GradedSeries, SeriesError, series_mul


def S(coeffs, order=None):
    return GradedSeries("t", coeffs, order)


def test_difference_of_squares():
    assert series_mul(S({0: 1, 1: 1}, 5), S({0: 1, 1: -1}, 5)) == S({0: 1, 2: -1}, 5)


def test_geometric_squared():
    g = GradedSeries.geometric("t", 1, 4)
    assert (g * g).coeffs == {0: 1, 1: 2, 2: 3, 3: 4}
    assert (g * g).order == 4


def test_laurent_product():
    assert series_mul(S({-1: 1, 0: 1}), S({-1: 1, 0: -1})) == S({-2: 1, 0: -1})


def test_unknown_beyond_order():
    a = S({0: 1}, 3)
    with pytest.raises(SeriesError):
        a.coefficient(3)
    assert a.coefficient(2) == 0


def test_order_of_laurent_product():
    # t^-2 (1 + O(t^3)) times (1 + O(t^5)) is known below t^1
    a = S({-2: 1}, 1)
    b = S({0: 1}, 5)
    assert (a * b).order == 1


def test_variable_mismatch():
    with pytest.raises(SeriesError):
        GradedSeries("t", {0: 1}) * GradedSeries("x", {0: 1})


def test_inverse():
    inv = S({0: 1, 1: -1}).inverse(6)
    assert inv == GradedSeries.geometric("t", 1, 6)


small = st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=4)


@given(small, small, st.integers(1, 8))
def test_agrees_with_polynomial_arithmetic(a, b, order):
    exact = S(a) * S(b)
    trunc = S(a, order) * S(b, order)
    assert trunc.order >= order
    assert trunc.truncate(order) == exact.truncate(order)
    for k in trunc.coeffs:
        assert k < trunc.order
