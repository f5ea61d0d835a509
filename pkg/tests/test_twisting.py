import random

import pytest

from drloci.decorations import TwdrDecoration, TwrDecoration, validate_twdr
from drloci.fixtures import load_decoration, load_graph, load_levels
from drloci.graphs import LevelStructure, MarkedDualGraph, half_edge_id
from drloci.partitions import check_extension
from drloci.twisting import (TwistError, check_local_max, pushforward_check,
                             stabilize, twist)
from randgen import random_twr


def two_vertex_twr(orders, genera=(1, 1), legs=(("z", "a", 2), ("p", "a", -2))):
    g = MarkedDualGraph.build(
        [("a", genera[0]), ("b", genera[1])], [("e", ("a", "b"))], legs)
    lv = LevelStructure.build({"a": 0, "b": -1})
    return g, lv, TwrDecoration.build(orders)


def test_bridge_at_double_zero_edge():
    # both node orders 0: the bridge carries a degree-2 function with two
    # simple extra critical legs, inserted just below the lower end
    g = MarkedDualGraph.build(
        [("a", 1), ("b", 1)], [("e", ("a", "b"))],
        [("z", "a", 1), ("p", "a", -1), ("z2", "b", 1), ("p2", "b", -1)])
    lv = LevelStructure.build({"a": 0, "b": -1})
    dec = TwrDecoration.build({"e.0": (0, False), "e.1": (0, False)})
    tw = twist(g, lv, dec)
    w = "tw:e"
    assert w in tw.graph.genus_of and tw.graph.genus_of[w] == 0
    ha = tw.decoration.base.order_of[half_edge_id("e:a", 1)]
    hb = tw.decoration.base.order_of[half_edge_id("e:b", 0)]
    assert ha == (-2, True) and hb == (-2, True)
    assert len(tw.decoration.extra_at(w)) == 2
    assert tw.shared_levels[w] == 2 * lv.of["b"] - 1


def test_bridge_at_mixed_edge_orders():
    # orders (1, -2): bridge orders (-3, 0), pole toward the upper end,
    # level strictly between the two ends
    g, lv, dec = two_vertex_twr({"e.0": (1, False), "e.1": (-2, True)})
    tw = twist(g, lv, dec)
    assert tw.decoration.base.order_of[half_edge_id("e:a", 1)] == (-3, True)
    assert tw.decoration.base.order_of[half_edge_id("e:b", 0)] == (0, False)
    assert len(tw.decoration.extra_at("tw:e")) == 1
    assert tw.shared_levels["tw:e"] == 2 * lv.of["b"] + 1
    assert validate_twdr(tw.graph, tw.levels, tw.decoration).ok


def test_twist_identity_when_already_exact():
    g, lv, dec = two_vertex_twr({"e.0": (1, False), "e.1": (-3, True)},
                                genera=(1, 2))
    tw = twist(g, lv, dec)
    assert all(not v.startswith("tw:") for v in tw.graph.vertex_ids)
    assert [e for e, _ in tw.graph.edges] == ["e"]


def test_twist_rejects_invalid_input():
    g, lv, _ = two_vertex_twr({"e.0": (0, False), "e.1": (0, False)})
    bad = TwrDecoration.build({"e.0": (0, False), "e.1": (-4, True)})  # sum -4
    with pytest.raises(TwistError):
        twist(g, lv, bad)


def test_extension_partition_of_twist():
    g = load_graph("dollar_unmarked_zeros")
    lv = load_levels("dollar_unmarked_zeros")
    tw = twist(g, lv, load_decoration("dollar_unmarked_zeros"))
    assert check_extension(tw.extended_partition, g.mu, g.total_genus)
    assert tw.extended_partition == (-4, 0, 0, 0, 1, 1, 1, 1, 1, 1)


def test_contracted_bridge_recovers_order_sum():
    # one extra-critical leg of order 1 between orders summing to -1
    g, lv, dec = two_vertex_twr({"e.0": (1, False), "e.1": (-2, True)})
    tw = twist(g, lv, dec)
    g2, lv2, dec2, _ = stabilize(tw.graph, tw.levels, tw.decoration, tw.shared_levels)
    o0, _ = dec2.order_of["e.0"]
    o1, _ = dec2.order_of["e.1"]
    assert o0 + o1 == -1 > -2


def test_round_trip_on_fixture():
    g = load_graph("horizontal_nodes")
    lv = load_levels("horizontal_nodes")
    dec = load_decoration("horizontal_nodes")
    tw = twist(g, lv, dec)
    assert tw.levels.depth + 1 == 3
    g2, lv2, dec2, cm = stabilize(tw.graph, tw.levels, tw.decoration, tw.shared_levels)
    assert (g2, lv2, dec2) == (g, lv, dec)
    assert sum(1 for e, _ in g2.edges if lv2.is_horizontal(g2, e)) == 1


def test_check_local_max_flags_marked_tail():
    g = MarkedDualGraph.build(
        [("a", 1), ("t", 0)], [("e", ("a", "t"))],
        [("p", "t", -1), ("z", "a", 1)])
    lv = LevelStructure.build({"a": 0, "t": -1})
    dec = TwdrDecoration.build(
        TwrDecoration.build({"e.0": (0, False), "e.1": (-2, True)}), [])
    rep = check_local_max(g, lv, dec)
    assert any(w == "t" for _, w, _ in rep.violations)


def test_check_local_max_flags_two_valent_maximum():
    g = MarkedDualGraph.build(
        [("a", 1), ("m", 0), ("b", 1)],
        [("e1", ("m", "a")), ("e2", ("m", "b"))],
        [("z", "a", 1), ("p", "b", -1)])
    lv = LevelStructure.build({"m": 0, "a": -1, "b": -1})
    dec = TwdrDecoration.build(
        TwrDecoration.build({"e1.0": (0, False), "e1.1": (-2, True),
                             "e2.0": (0, False), "e2.1": (-2, True)}), [])
    rep = check_local_max(g, lv, dec)
    assert any(w == "m" and "maximum" in d for _, w, d in rep.violations)


def test_twist_outputs_pass_local_max():
    rng = random.Random(5)
    for _ in range(20):
        g, lv, dec = random_twr(rng)
        tw = twist(g, lv, dec)
        assert check_local_max(tw.graph, tw.levels, tw.decoration).ok


def test_stabilize_deletes_bare_tail():
    # a hand-built fully marked decoration with a rational tail
    g = MarkedDualGraph.build(
        [("a", 2), ("t", 0)], [("e", ("a", "t"))],
        [("z", "a", 2), ("p", "a", -2)])
    lv = LevelStructure.build({"a": 0, "t": -1})
    base = TwrDecoration.build({"e.0": (1, False), "e.1": (-3, True)})
    twdr = TwdrDecoration.build(
        base, [("c0", "a", 1), ("c2", "a", 1), ("c3", "a", 1), ("c1", "t", 1)])
    g2, lv2, dec2, cm = stabilize(g, lv, twdr)
    assert g2.vertex_ids == ("a",)
    assert g2.edges == ()
    assert cm.contracted_vertices == {"t": ("tail", "a")}
    assert lv2.of == {"a": 0}


def test_pushforward_checks_on_random_twrs():
    rng = random.Random(23)
    for _ in range(25):
        g, lv, dec = random_twr(rng)
        tw = twist(g, lv, dec)
        g2, lv2, dec2, cm = stabilize(tw.graph, tw.levels, tw.decoration,
                                      tw.shared_levels)
        assert (g2, lv2, dec2) == (g, lv, dec)
        pf = pushforward_check(tw.graph, cm.shared_levels_src, tw.decoration,
                               g2, cm.shared_levels_dst, dec2, cm)
        assert pf.ok, pf.details
