import itertools
import json

import pytest

from coulombkit.quiver import (AssumptionError, QuiverError, ValuedQuiver, build_pair, check_assumption,
                               classify_finite, edge_constants, edge_identities_hold, finite_type_quiver,
                               minimal_symmetrizer, require_assumption, unfold, validate)


def quiver(cartan, d=None, **kw):
    return ValuedQuiver.build(cartan, d=d, check=False, **kw)


def test_validate_ok():
    assert validate(quiver([[2, -1], [-2, 2]], d=(2, 1))) == []


def test_validate_symmetrizer_message():
    errors = validate(quiver([[2, -1], [-2, 2]], d=(1, 1)))
    assert any("symmetrizer" in e for e in errors)


def test_validate_sign_pattern_message():
    errors = validate(quiver([[2, -1], [0, 2]], d=(1, 1)))
    assert any("sign pattern" in e for e in errors)


@pytest.mark.parametrize("cartan, d, expect", [
    ([[2, -1], [-3, 2]], (3, 1), (1, 1, 3, 1)),
    ([[2, -2], [-2, 2]], (1, 1), (2, 1, 1, 1)),
    ([[2, -4], [-6, 2]], (3, 2), (2, 2, 3, 1)),
])
def test_edge_constants(cartan, d, expect):
    q = ValuedQuiver.build(cartan, d=d, arrows=[("2", "1")])
    (e,) = edge_constants(q).values()
    assert (e.g, e.f("1", "2"), e.f("2", "1"), e.d_ij) == expect
    assert edge_identities_hold(q)


@pytest.mark.parametrize("cartan, d", [
    ([[2, -1], [-2, 2]], (2, 1)),
    ([[2, -1], [-3, 2]], (3, 1)),
    ([[2, -1], [-1, 2]], (1, 1)),
])
def test_minimal_symmetrizer(cartan, d):
    assert minimal_symmetrizer(cartan) == d


def test_assumption():
    for kind, n in [("B", 3), ("C", 3), ("F", 4), ("G", 2), ("A", 3), ("D", 4), ("E", 6)]:
        assert check_assumption(finite_type_quiver(kind, n))
    q = ValuedQuiver.build([[2, -2], [-3, 2]], d=(3, 2))
    assert not check_assumption(q)
    with pytest.raises(AssumptionError):
        require_assumption(q)


def test_rank2_finite_types_satisfy_assumption():
    for a, b in itertools.product((1, 2, 3), repeat=2):
        if a * b < 4 and (a == 1 or b == 1):
            d = minimal_symmetrizer([[2, -a], [-b, 2]])
            assert check_assumption(ValuedQuiver.build([[2, -a], [-b, 2]], d=d))


def test_json_round_trip_and_errors():
    text = json.dumps({"vertices": [{"id": "1", "v": 1, "w": 0, "d": 3}, {"id": "2", "v": 1, "w": 0, "d": 1}],
                       "cartan": [[2, -1], [-3, 2]], "edges": [{"from": "2", "to": "1"}]})
    q = ValuedQuiver.from_json(text)
    assert ValuedQuiver.from_json(q.to_json()) == q
    with pytest.raises(QuiverError, match="cartan"):
        ValuedQuiver.from_json({"vertices": [{"id": "1"}]})
    with pytest.raises(QuiverError, match="unknown key"):
        ValuedQuiver.from_json({"vertices": [{"id": "1", "x": 1}], "cartan": [[2]]})
    inferred = ValuedQuiver.from_json({"vertices": [{"id": "1"}, {"id": "2"}],
                                       "cartan": [[2, -1], [-3, 2]], "edges": [{"from": "2", "to": "1"}]})
    assert inferred.d == (3, 1) and inferred.symmetrizer_inferred


def test_classify():
    assert classify_finite(finite_type_quiver("G", 2)) == "G2"
    assert classify_finite(finite_type_quiver("F", 4)) == "F4"
    assert classify_finite(finite_type_quiver("B", 3)) == "B3"


@pytest.mark.parametrize("kind, n, target", [("B", 2, "A3"), ("B", 3, "A5"), ("C", 3, "D4"),
                                             ("F", 4, "E6"), ("G", 2, "D4")])
def test_unfolding_table(kind, n, target):
    u = unfold(finite_type_quiver(kind, n))
    assert u.target_type == target and u.table_matches


def test_unfold_g2_star():
    u = unfold(finite_type_quiver("G", 2, v=(2, 1)), {"1": [1, 1, 0], "2": [1]})
    assert set(u.quiver.arrows) == {("2_1", "1_1"), ("2_1", "1_2"), ("2_1", "1_3")}
    assert u.weight == {"1_1": -1, "1_2": -1, "1_3": 0, "2_1": -1}


def test_unfold_recovers_dimensions():
    q = finite_type_quiver("C", 3, v=(1, 2, 3))
    u = unfold(q, {"1": [1], "2": [2], "3": [1, 2]})
    assert sum(u.quiver.v) == sum(q.v)


def test_unfold_simply_laced_is_identity_shape():
    q = finite_type_quiver("A", 3)
    u = unfold(q)
    assert u.quiver.cartan == q.cartan


def test_unfold_partition_mismatch():
    with pytest.raises(QuiverError):
        unfold(finite_type_quiver("G", 2, v=(1, 1)), {"1": [2, 0, 0], "2": [1]})


def test_pair_g2():
    pair = build_pair(finite_type_quiver("G", 2, v=(1, 1), w=(0, 0)))
    assert pair.groups == {3: ("1",), 1: ("2",)}
    (s,) = pair.reps[1]
    assert (s.kind, s.source, s.target, s.multiplicity) == ("bifundamental", "2", "1", 1)


def test_pair_single_vertex_and_multiplicity():
    q = ValuedQuiver.build([[2]], d=(2,), v=(1,), w=(1,))
    pair = build_pair(q)
    assert pair.groups == {2: ("1",)} and pair.reps[2][0].kind == "framing"
    q = ValuedQuiver.build([[2, -2], [-2, 2]], d=(1, 1), v=(1, 1))
    assert build_pair(q).reps[1][0].multiplicity == 2
    for kind, n in [("B", 3), ("F", 4), ("G", 2), ("C", 4)]:
        q = finite_type_quiver(kind, n, w=[1] * n)
        assert build_pair(q).trivial_action_holds(q)
