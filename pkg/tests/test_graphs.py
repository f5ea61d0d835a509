import pytest

from drloci.fixtures import load_graph
from drloci.graphs import (EnumerationCapExceeded, LevelStructure,
                           MarkedDualGraph, canonical_key,
                           enumerate_level_structures, isomorphic,
                           subcomplex_eq, subcomplex_leq, validate)


def theta():
    return MarkedDualGraph.build(
        [("v1", 0), ("v2", 0)],
        [(e, ("v1", "v2")) for e in ("e1", "e2", "e3")])


def dollar():
    return load_graph("dollar_unmarked_zeros")


def test_theta_validation():
    rep = validate(theta())
    assert rep.ok and rep.connected and rep.stable
    assert rep.total_genus == 2


def test_dollar_validation():
    rep = validate(dollar())
    assert rep.ok
    assert rep.total_genus == 2
    assert rep.mu_sum == 0


def test_unstable_single_vertex_flagged():
    g = MarkedDualGraph.build([("v", 0)], [], [("x", "v", 1)])
    rep = validate(g)
    assert rep.ok  # structurally fine, prestable
    assert rep.unstable_vertices == ["v"]


def test_structural_errors_located():
    g = MarkedDualGraph.build([("v", 0), ("v", 1)], [("e", ("v", "w"))], [])
    rep = validate(g)
    codes = {c for c, _ in rep.errors}
    assert "duplicate-vertex-id" in codes
    assert "dangling-half-edge" in codes


def test_genus_invariant_under_subdivision():
    g = theta()
    sub = MarkedDualGraph.build(
        list(g.vertices) + [("w", 0)],
        [("e1a", ("v1", "w")), ("e1b", ("w", "v2")),
         ("e2", ("v1", "v2")), ("e3", ("v1", "v2"))])
    assert sub.total_genus == g.total_genus


def test_subcomplex_leq_dollar():
    g = dollar()
    lv = LevelStructure.build({"v1": 0, "v2": -1})
    sub = subcomplex_leq(g, lv, -1)
    assert sub.vertices == ("v2",)
    assert sub.edges == ()
    assert set(sub.legs) == {"z1", "z2", "z3"}
    assert subcomplex_leq(g, lv, 0).vertices == ("v1", "v2")
    assert subcomplex_leq(g, lv, -5).vertices == ()


def test_subcomplex_eq_dollar_cuts_downward_edges():
    g = dollar()
    lv = LevelStructure.build({"v1": 0, "v2": -1})
    sub = subcomplex_eq(g, lv, 0)
    assert sub.vertices == ("v1",)
    assert set(sub.legs) == {"p"}
    assert set(sub.half_legs) == {("q1", 0), ("q2", 0), ("q3", 0)}


def test_subcomplex_eq_no_downward():
    g = load_graph("horizontal_nodes")
    lv = LevelStructure.build({"v1": 0, "v2": -1, "v3": -1})
    sub = subcomplex_eq(g, lv, -1)
    assert set(sub.vertices) == {"v2", "v3"}
    assert sub.edges == ("q3",)
    assert set(sub.legs) == {"z2", "z3"}
    assert sub.half_legs == ()


def test_half_leg_count_matches_vertical_edges():
    g = load_graph("level_dependence")
    lv = LevelStructure.from_json({"v1": 0, "v2": -1, "v3": -1, "v4": -2, "v5": -2})
    sub = subcomplex_eq(g, lv, -1)
    vertical_from = [e for e, _ in g.edges
                     if lv.edge_levels(g, e) == (-1, -2)]
    assert len(sub.half_legs) == len(vertical_from) == 4


def test_enumerate_dollar_three_structures():
    assert len(enumerate_level_structures(dollar())) == 3


def test_enumerate_single_vertex():
    g = MarkedDualGraph.build([("v", 1)], [], [("x", "v", 1), ("y", "v", -1)])
    assert len(enumerate_level_structures(g)) == 1


def test_enumerate_contains_tilted_cherry_pair():
    g = load_graph("cherry")
    structs = enumerate_level_structures(g)
    wanted = [LevelStructure.build({"vt": 0, "va": -1, "vb": -2}),
              LevelStructure.build({"vt": 0, "va": -2, "vb": -1})]
    for w in wanted:
        assert any(s == w for s in structs)


def test_enumerate_normalized_and_deduplicated():
    g = dollar()
    structs = enumerate_level_structures(g)
    for s in structs:
        s.check_normalized(g)
    for i, a in enumerate(structs):
        for b in structs[i + 1:]:
            assert not isomorphic(g, g, a, b)
    assert structs == enumerate_level_structures(g)


def test_enumeration_cap():
    g = MarkedDualGraph.build(
        [(f"v{i}", 0) for i in range(7)],
        [(f"e{i}", (f"v{i}", f"v{i + 1}")) for i in range(6)])
    with pytest.raises(EnumerationCapExceeded):
        enumerate_level_structures(g, cap=10)


def test_isomorphic_self_and_relabeled():
    g = dollar()
    relabel = MarkedDualGraph.build(
        [("a", 0), ("b", 0)],
        [("x", ("a", "b")), ("y", ("a", "b")), ("w", ("a", "b"))],
        [("pp", "a", -3), ("m1", "b", 1), ("m2", "b", 1), ("m3", "b", 1)])
    assert isomorphic(g, g)
    assert isomorphic(g, relabel)


def test_cherry_tilts_not_isomorphic():
    g = load_graph("cherry")
    l1 = LevelStructure.build({"vt": 0, "va": -1, "vb": -2})
    l2 = LevelStructure.build({"vt": 0, "va": -2, "vb": -1})
    assert not isomorphic(g, g, l1, l2)


def test_canonical_key_respects_decorations():
    g = theta()
    k1 = canonical_key(g, edge_data=lambda e, s: (0, False))
    k2 = canonical_key(g, edge_data=lambda e, s: (1, False) if e == "e1" else (0, False))
    assert k1 != k2


def test_json_round_trip():
    g = load_graph("level_dependence")
    assert MarkedDualGraph.from_json(g.to_json()) == g


def test_enumeration_counts_match_ordered_set_partitions():
    # with pairwise distinct vertex colors no two structures are isomorphic,
    # so the count is the number of ordered set partitions (Fubini numbers)
    for n, fubini in ((1, 1), (2, 3), (3, 13)):
        g = MarkedDualGraph.build(
            [(f"v{i}", i) for i in range(n)],
            [(f"e{i}", (f"v{i}", f"v{i + 1}")) for i in range(n - 1)])
        assert len(enumerate_level_structures(g)) == fubini


def test_enumerate_max_levels_cap():
    structs = enumerate_level_structures(dollar(), max_levels=1)
    assert len(structs) == 1
    assert structs[0].of == {"v1": 0, "v2": 0}
