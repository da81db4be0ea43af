from fractions import Fraction

import pytest
import sympy

from coulombkit.gklo import (SigmaCycleError, TheoryData, compare_all, compare_vertex, h_from_a, h_mode,
                             image_shape_ok, monopole_class_image, mu12, mu12_as_printed, phi, relation_suite,
                             solve_sigma)
from coulombkit.poly import Poly
from coulombkit.quiver import ValuedQuiver, finite_type_quiver

P = Poly.parse


def theory(kind, n, v, w):
    return TheoryData(finite_type_quiver(kind, n, v, w))


def sigma_oracle(q):
    """Independent sympy solve of the shift equations with sigma at the first vertex pinned."""
    s = {i: sympy.Symbol(f"s{i}") for i in q.ids}
    eqs = [sympy.Eq(sympy.Rational(q.sym(o) * q.c(o, i), 2), s[o] - s[i] - q.sym(o) + q.sym(i))
           for o, i in q.arrows]
    eqs.append(sympy.Eq(s[q.ids[0]], 0))
    sol = sympy.solve(eqs, list(s.values()), dict=True)[0]
    return {i: Fraction(int(sol[s[i]].p), int(sol[s[i]].q)) for i in q.ids}


@pytest.mark.parametrize("kind, n", [("A", 1), ("A", 2), ("B", 2), ("B", 3), ("C", 3), ("G", 2), ("F", 4)])
def test_sigma_matches_oracle(kind, n):
    q = finite_type_quiver(kind, n)
    sol = solve_sigma(q)
    assert sol.sigma == sigma_oracle(q)
    assert all(r == 0 for r in sol.residuals.values())
    assert sol.integral == all(x.denominator == 1 for x in sol.sigma.values())


def test_sigma_examples():
    assert solve_sigma(finite_type_quiver("B", 2)).sigma == {"1": 0, "2": -2}
    assert solve_sigma(finite_type_quiver("B", 2)).integral
    assert solve_sigma(finite_type_quiver("A", 1)).sigma == {"1": 0}
    a2 = solve_sigma(finite_type_quiver("A", 2))
    assert a2.sigma["2"] == Fraction(-1, 2) and not a2.integral
    g2 = finite_type_quiver("G", 2)
    assert solve_sigma(g2).sigma["2"] == Fraction(-7, 2)
    assert solve_sigma(g2.reversed()).sigma["2"] == Fraction(-1, 2)


def test_sigma_cycle_reported():
    q = ValuedQuiver.build([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
                           arrows=[("2", "1"), ("3", "2"), ("1", "3")])
    with pytest.raises(SigmaCycleError) as info:
        solve_sigma(q)
    assert info.value.report[0]["residual"] == "-3/2"


def test_mu12_examples():
    data = theory("B", 2, (1, 1), (0, 1))
    mu1, mu2 = mu12(data)
    assert {i: mu1[i] + mu2[i] for i in mu1} == data.mu()
    assert mu2["1"] == -1
    printed1, printed2 = mu12_as_printed(data)
    assert printed2 == {"1": -1, "2": -2}
    zero = theory("G", 2, (0, 0), (1, 2))
    assert mu12(zero) == ({"1": 1, "2": 2}, {"1": 0, "2": 0})
    g2 = theory("G", 2, (1, 1), (1, 0))
    mu1, mu2 = mu12(g2)
    assert {i: mu1[i] + mu2[i] for i in mu1} == g2.mu()


@pytest.mark.parametrize("kind, n, v, w", [("B", 2, (1, 1), (0, 1)), ("G", 2, (1, 1), (1, 0)),
                                           ("A", 2, (2, 1), (1, 1)), ("C", 3, (1, 2, 1), (0, 1, 1))])
def test_image_grades_follow_mu12(kind, n, v, w):
    data = theory(kind, n, v, w)
    mu1, mu2 = mu12(data)
    for i in data.quiver.ids:
        for k in (1, 2, 3):
            assert phi(data, "E", i, k).grade() == k + mu1[i]
            assert phi(data, "F", i, k).grade() == k + mu2[i]
            assert phi(data, "A", i, 1).grade() == 1


def test_phi_examples():
    data = theory("A", 1, (1,), (1,))
    amb = data.ambient
    e = phi(data, "E", 1, 1)
    assert e == amb.monomial(-P("w[1,1] - t[1] - h"), {("1", 1): -1})
    assert phi(data, "F", 1, 1) == amb.u(1, 1)
    a = phi(theory("A", 1, (2,), (0,)), "A", 1, 1)
    assert a.coefficient().to_poly() == P("-w[1,1] - w[1,2]")


def test_phi_shapes_and_admissibility():
    data = theory("G", 2, (2, 1), (1, 1))
    for gen in ("A", "E", "F"):
        for i in ("1", "2"):
            for k in (1, 2):
                x = phi(data, gen, i, k)
                assert image_shape_ok(data, gen, i, x)
                for coeff in x.terms.values():
                    data.ambient.check_fraction(coeff)


def test_monopole_class_examples():
    data = theory("A", 1, (2,), (0,))
    amb = data.ambient
    assert monopole_class_image(data, 1, 2) == amb.monomial(1, {("1", 1): 1, ("1", 2): 1})
    assert monopole_class_image(data, 1, 2, dual=True) == amb.monomial(1, {("1", 1): -1, ("1", 2): -1})
    one = theory("A", 1, (1,), (1,))
    assert monopole_class_image(one, 1, 1, dual=True) == one.ambient.monomial(P("w[1,1] - t[1] - h"),
                                                                              {("1", 1): -1})
    with pytest.raises(IndexError):
        monopole_class_image(one, 1, 2)


def test_monopole_class_edge_factor_b2():
    data = theory("B", 2, (1, 1), (0, 0))
    # vertex 1 has the in-arrow from 2 with f_21 = 2: factors p = 0, 1
    x = monopole_class_image(data, 1, 1, dual=True)
    expected = P("(w[1,1] - w[2,1] - 2*h) * (w[1,1] - w[2,1] - 3*h)")
    assert x.coefficient((( ("1", 1), -1),)).to_poly() == expected


def h_oracle(data, i, count):
    """Expand the closed form of H_i in 1/t with sympy and return the first modes."""
    q = data.quiver
    t, hb = sympy.symbols("t h")
    x = sympy.Symbol("x")
    names = {}

    def sym(name):
        return names.setdefault(name, sympy.Symbol(name))

    def W(j, arg):
        return sympy.Mul(*[arg - sym(f"w[{j},{r}]") for r in range(1, q.dim(j) + 1)])

    d = q.sym(i)
    num = sympy.Mul(*[t - sym(f"t[{k}]") - d * hb for k in data.flavor_indices(i)])
    for j in q.ids:
        if j == i:
            continue
        for p in range(1, -q.c(j, i) + 1):
            num *= W(j, t - (sympy.Rational(d * q.c(i, j), 2) + p * q.sym(j)) * hb)
    expr = (num / (W(i, t) * W(i, t - d * hb))).subs(t, 1 / x)
    mu = data.mu()[i]
    ser = sympy.series(sympy.simplify(expr * x ** mu), x, 0, count).removeO()
    return {k - mu: sympy.expand(ser.coeff(x, k)) for k in range(count)}, names


def to_sympy(p, names):
    def sym(name):
        return names.setdefault(name, sympy.Symbol(name))
    return sum((sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
                * sympy.Mul(*[sym(v) ** e for v, e in mono]) for mono, c in p.items()), sympy.Integer(0))


@pytest.mark.parametrize("kind, n, v, w, i", [("A", 1, (1,), (2,), "1"), ("B", 2, (1, 1), (0, 1), "1"),
                                              ("B", 2, (1, 1), (0, 1), "2"), ("G", 2, (1, 1), (1, 0), "1")])
def test_h_from_a_matches_closed_form(kind, n, v, w, i):
    data = theory(kind, n, v, w)
    count = 4
    series = h_from_a(data, i, count - data.mu()[i])
    modes, names = h_oracle(data, i, count)
    for r, expected in modes.items():
        got = to_sympy(h_mode(series, r), names)
        assert sympy.expand(got - expected) == 0


def test_h_examples():
    data = theory("A", 1, (0,), (1,))
    series = h_from_a(data, 1, 2)
    assert series.valuation() == -1
    assert h_mode(series, -1) == 1 and h_mode(series, 0) == P("-t[1] - h")
    assert theory("A", 1, (1,), (2,)).mu()["1"] == 0
    for r in range(0, 4):
        assert h_mode(h_from_a(theory("B", 2, (1, 1), (0, 1)), "2", 5), r).is_homogeneous()


@pytest.mark.parametrize("kind, n, v, w", [("A", 1, (1,), (1,)), ("A", 1, (1,), (2,)),
                                           ("B", 2, (1, 1), (0, 1)), ("G", 2, (1, 1), (1, 0)),
                                           ("G", 2, (2, 1), (1, 0))])
def test_compare_vertex(kind, n, v, w):
    data = theory(kind, n, v, w)
    checks = compare_all(data, 3)
    assert all(c.status == "pass" for c in checks), [c.to_json() for c in checks if not c.ok]
    assert all(c.detail["parity_matches"] for c in checks if "sign" in c.detail)


def test_compare_sign_on_e_side_a1():
    data = theory("A", 1, (1,), (1,))
    checks = compare_vertex(data, 1, 1, solve_sigma(data.quiver))
    assert [c.status for c in checks] == ["pass", "pass", "pass"]


def test_compare_invariant_under_sigma_shift():
    data = theory("B", 2, (1, 1), (0, 1))
    shifted = solve_sigma(data.quiver).shifted(1)
    assert all(c.ok for c in compare_all(data, 3, shifted))


def test_compare_detects_wrong_sigma():
    data = theory("B", 2, (1, 1), (0, 1))
    wrong = solve_sigma(data.quiver)
    wrong.sigma["2"] += 1
    assert not all(c.ok for c in compare_all(data, 2, wrong))


def test_literal_mode_reports_ratio():
    data = theory("B", 2, (1, 1), (0, 1))
    checks = compare_all(data, 1, rescale=False)
    ratios = {c.id: c.detail.get("ratio") for c in checks if c.status == "rescaled"}
    assert ratios == {"compare-E-1-1": "2", "compare-F-1-1": "2"}


@pytest.mark.parametrize("kind, n, v, w, scalars", [
    ("A", 1, (1,), (2,), {"1": "1"}),
    ("B", 2, (1, 1), (0, 1), {"1": "2", "2": "1"}),
    ("G", 2, (1, 1), (1, 0), {"1": "3", "2": "1"}),
])
def test_relation_suite(kind, n, v, w, scalars):
    report = relation_suite(theory(kind, n, v, w), 3)
    assert report.ok, [c.to_json() for c in report.checks if not c.ok]
    assert report.scalars == scalars


def test_commutator_a1_hand_computation():
    data = theory("A", 1, (1,), (1,))
    comm = phi(data, "E", 1, 1).commutator(phi(data, "F", 1, 1))
    assert comm == data.ambient.hbar()


def test_suite_limits():
    with pytest.raises(ValueError):
        relation_suite(theory("A", 2, (3, 2), (1, 1)), 3)
