import itertools

import pytest
import sympy

from coulombkit.poly import Poly
from coulombkit.rank2 import (EdgeData, TorusClass, Word, boundary_expected, check_relation, derive_boundary,
                              g2_zastava_dictionary, ladder_relation, ladder_relations, multiplicative_defect,
                              named_relations, positive_normal_form, presentation_checks, quadratic_relations,
                              unit_offset, w_diff, zstar)

M3 = EdgeData.from_m(3)


def test_zstar_examples():
    assert zstar((0, 1), M3) == TorusClass({(0, 1): w_diff()})
    assert zstar((1, 3), M3) == TorusClass.u(1, 3)
    assert zstar((0, 1), EdgeData(2, 1, 1)) == TorusClass({(0, 1): w_diff() ** 2})


def test_products():
    assert zstar((0, 1), M3) * zstar((0, -1), M3) == TorusClass.scalar(w_diff())
    assert TorusClass.u(1, 3) * TorusClass.u(-1, -3) == TorusClass.u(0, 0)
    x = zstar((2, 5), M3)
    assert x * TorusClass.u(0, 0) == x


def test_support_is_additive():
    x = zstar((1, 2), M3) + zstar((0, 1), M3)
    y = zstar((2, -1), M3) + TorusClass.u(1, 1)
    sums = {(a + c, b + d) for (a, b) in x.terms for (c, d) in y.terms}
    assert set((x * y).terms) <= sums


def test_named_relations_hold():
    assert all(r.holds for r in named_relations())


@pytest.mark.parametrize("m", range(1, 7))
def test_relation_family_and_ladder(m):
    assert all(r.holds for r in quadratic_relations(m))
    assert all(r.holds for r in ladder_relations(m))


def test_ladder_range():
    ladder_relation(3, 0)
    ladder_relation(3, 2)
    with pytest.raises(ValueError):
        ladder_relation(3, 3)


def test_relation_clears_to_polynomial_identity():
    for r in quadratic_relations(4) + ladder_relations(4):
        for coeff in r.lhs_image.terms.values():
            assert isinstance(coeff, Poly)


def test_false_relation_detected():
    r = check_relation(Word.of((1, 0), (1, 3)), Word.of((1, 2), (1, 2)), M3)
    assert not r.holds and "witness" in r.to_json()


def test_multiplicative_defect_nonnegative():
    edge = EdgeData(1, 1, 2)
    box = range(-3, 4)
    for a, b, c, d in itertools.product(box, repeat=4):
        assert multiplicative_defect((a, b), (c, d), edge) >= 0


@pytest.mark.parametrize("m", range(1, 7))
def test_positive_normal_form(m):
    edge = EdgeData.from_m(m)
    for a in range(5):
        for b in range(4 * m + 1):
            assert positive_normal_form(a, b, m).image(edge) == zstar((a, b), edge)


def test_normal_form_examples():
    assert positive_normal_form(2, 5, 3).image(M3) == (Word.of((1, 3), (1, 2))).image(M3)
    assert positive_normal_form(1, 4, 3).image(M3) == TorusClass({(1, 4): w_diff()})


def test_sample_expression_m2():
    e = EdgeData.from_m(2)
    assert Word.of((1, 1)).image(e) == Word.of((1, 2), (0, -1)).image(e)


@pytest.mark.parametrize("g, f12, f21", [(1, 1, 3), (2, 1, 1), (1, 2, 3), (3, 1, 2)])
def test_presentation(g, f12, f21):
    edge = EdgeData(g, f12, f21)
    a0, b0 = unit_offset(edge)
    assert f12 * b0 - f21 * a0 == 1
    assert all(r.holds for r in presentation_checks(edge))


def test_zastava():
    report = g2_zastava_dictionary()
    assert len(report.relations) == 6
    assert report.ok


def test_boundary_against_sympy():
    A1, A2, b0, b1 = sympy.symbols("A1 A2 b0 b1")
    b2 = b0 * b1 / (A2 - A1)
    b3 = b0 * b2 / (A1 - A2)
    b4 = b0 * b3 / (A1 - A2)
    assert sympy.simplify(b4 + b0 ** 3 * b1 / (A1 - A2) ** 3) == 0
    assert derive_boundary() == boundary_expected()
