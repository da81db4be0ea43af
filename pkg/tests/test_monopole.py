import itertools
from fractions import Fraction

import pytest

from coulombkit.monopole import (classical_factor, d_lambda, delta, enumerate_coweights, grading_gap,
                                 grading_gap_from_sums, hilbert_series, homological_exponent)
from coulombkit.quiver import AssumptionError, ValuedQuiver, finite_type_quiver
from coulombkit.series import GradedSeries


def test_enumeration_examples():
    assert list(enumerate_coweights((1,), 1)) == [((1,),), ((0,),), ((-1,),)]
    pairs = [lam[0] for lam in enumerate_coweights((2,), 1)]
    assert pairs == [(1, 1), (1, 0), (1, -1), (0, 0), (0, -1), (-1, -1)]
    assert len(list(enumerate_coweights((1, 1), 2))) == 25


def test_cap_restricts_to_dominated():
    out = list(enumerate_coweights((2,), 2, cap=[(1, -1)]))
    assert [lam[0] for lam in out] == [(1, -1), (0, 0)]


def test_delta_examples():
    g2 = finite_type_quiver("G", 2, v=(1, 1), w=(0, 0))
    assert delta(g2, ((1,), (0,)), flavor_term=False) == Fraction(3, 2)
    assert delta(g2, ((0,), (0,))) == 0
    u1 = ValuedQuiver.build([[2]], v=(1,), w=(1,))
    for n in range(-4, 5):
        assert delta(u1, ((n,),)) == Fraction(abs(n), 2)


def test_d_lambda_rank2_exponent():
    g2 = finite_type_quiver("G", 2, v=(1, 1), w=(0, 0))
    for a, b in itertools.product(range(-3, 4), repeat=2):
        assert d_lambda(g2, ((a,), (b,)), flavor_term=False) == max(b - 3 * a, 0)
    assert d_lambda(g2, ((0,), (0,))) == 0


def test_d_lambda_refuses_without_assumption():
    q = ValuedQuiver.build([[2, -2], [-3, 2]], d=(3, 2), v=(1, 1))
    with pytest.raises(AssumptionError):
        d_lambda(q, ((0,), (0,)))


def dense(series, n):
    return [series.coefficient(k) for k in range(n)]


def test_classical_factors():
    assert dense(classical_factor(((1, 1),), 9), 9) == dense(
        GradedSeries.geometric("t", 2, 9) * GradedSeries.geometric("t", 4, 9), 9)
    assert dense(classical_factor(((2, 1),), 9), 9) == dense(GradedSeries.geometric("t", 2, 9) ** 2, 9)
    assert dense(classical_factor(((2, 1, 1),), 9), 9) == dense(
        GradedSeries.geometric("t", 2, 9) ** 2 * GradedSeries.geometric("t", 4, 9), 9)


def test_cap_zero_gives_classical_factor():
    q = finite_type_quiver("A", 2, v=(1, 2), w=(1, 1))
    report = hilbert_series(q, 12, 2, cap=[(0,), (0, 0)])
    assert report.series == classical_factor(((0,), (0, 0)), 12)


def test_parallel_chunks_agree():
    q = finite_type_quiver("B", 2, v=(1, 2), w=(2, 1))
    serial = hilbert_series(q, 12, 4, workers=1)
    parallel = hilbert_series(q, 12, 4, workers=3)
    assert serial.to_json() == parallel.to_json()


def test_untwisted_order_independence():
    q = finite_type_quiver("A", 2, v=(1, 1), w=(1, 1))
    a = hilbert_series(q, 10, 6)
    b = hilbert_series(q.reversed(), 10, 6)
    assert a.series == b.series


@pytest.mark.parametrize("kind", ["B", "C", "G"])
def test_gap_depends_only_on_sums(kind):
    q = finite_type_quiver(kind, 2, v=(2, 1), w=(1, 2))
    for lam in enumerate_coweights(q.v, 2):
        sums = [sum(p) for p in lam]
        assert grading_gap(q, lam) == grading_gap_from_sums(q, sums)
        assert grading_gap(q, lam, False) == grading_gap_from_sums(q, sums, False)


def test_homological_grading_is_not_positive():
    q = finite_type_quiver("A", 1, v=(1,), w=(2,))
    report = hilbert_series(q, 10, 12, grading="homological")
    # exponent 4 max(-n, 0) vanishes for every n >= 0
    assert report.series.coefficient(0) == 13
    assert report.status == "divergent"
    assert homological_exponent(q, ((-2,),)) == 8
