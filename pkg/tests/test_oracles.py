from fractions import Fraction

import pytest

from dynsparse import oracles
from dynsparse.errors import NotSubgraph, TooLarge
from dynsparse.expanders import circulant_graph
from dynsparse.graph import DynamicGraph

from conftest import random_connected


def complete_graph(n):
    g = DynamicGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            g.insert_edge(u, v)
    return g


def test_exact_conductance_complete_graph():
    # K4: the worst cut is a bisection, 4 crossing over volume 6
    phi, side = oracles.exact_conductance(complete_graph(4))
    assert phi == Fraction(2, 3)
    assert len(side) == 2


def test_exact_conductance_cycle():
    g = circulant_graph(8, [1])
    phi, side = oracles.exact_conductance(g)
    assert phi == Fraction(2, 8)  # halve the cycle: 2 crossing, volume 8
    assert oracles.conductance_of_cut(g, side) == phi


def test_exact_conductance_cap():
    with pytest.raises(TooLarge):
        oracles.exact_conductance(complete_graph(4), cap=3)


def test_conductance_of_cut_matches_enumeration(small_graph):
    phi, side = oracles.exact_conductance(small_graph)
    best = min(oracles.conductance_of_cut(small_graph, s)
               for s, _ in _all_proper_subsets(small_graph))
    assert phi == best


def _all_proper_subsets(g):
    vs = sorted(g.vertices())
    for mask in range(1, (1 << len(vs)) - 1):
        yield {vs[i] for i in range(len(vs)) if (mask >> i) & 1}, mask


def test_verify_cut_membership_identity(small_graph):
    rep = oracles.verify_cut_membership(small_graph, small_graph.copy(),
                                        eps=0.01)
    assert rep.ok
    assert rep.min_ratio == pytest.approx(1.0)
    assert rep.max_ratio == pytest.approx(1.0)


def test_verify_cut_membership_scaled(small_graph):
    import math
    h = DynamicGraph(small_graph.vertex_set())
    for eid, u, v, w in small_graph.edges():
        h._insert(u, v, w * math.exp(0.3), eid=eid)
    assert oracles.verify_cut_membership(small_graph, h, eps=0.4).ok
    assert not oracles.verify_cut_membership(small_graph, h, eps=0.2).ok


def test_verify_spanner_hop_metric():
    g = circulant_graph(6, [1])  # 6-cycle
    h = g.copy()
    eid = sorted(h.edge_ids())[0]
    h.delete_edge(eid)  # path: worst stretch 5 for the removed edge
    rep = oracles.verify_spanner(g, h, t=5)
    assert rep.ok
    assert not oracles.verify_spanner(g, h, t=4.5).ok


def test_verify_spanner_not_subgraph(small_graph):
    h = DynamicGraph(small_graph.vertex_set())
    # an edge between the two least-connected vertices need not exist
    degs = sorted(small_graph.vertices(),
                  key=small_graph.degree)
    u, v = degs[0], degs[1]
    if v in set(small_graph.neighbors(u)):
        pytest.skip("random graph happens to contain the probe edge")
    h.insert_edge(u, v)
    with pytest.raises(NotSubgraph):
        oracles.verify_spanner(small_graph, h, t=10)


def test_verify_spectral_identity_and_scaled(small_graph):
    import math
    rep = oracles.verify_spectral(small_graph, small_graph.copy(), eps=0.01)
    assert rep.ok
    h = DynamicGraph(small_graph.vertex_set())
    for eid, u, v, w in small_graph.edges():
        h._insert(u, v, w * math.exp(0.2), eid=eid)
    rep = oracles.verify_spectral(small_graph, h, eps=0.25)
    assert rep.ok
    assert rep.min_ratio == pytest.approx(math.exp(0.2), rel=1e-6)
    assert not oracles.verify_spectral(small_graph, h, eps=0.1).ok


def test_max_flow_exact_known_value():
    # diamond: s=0 -> {1,2} -> t=3, unit capacities => max flow 2
    cap = {0: {1: 1.0, 2: 1.0}, 1: {3: 1.0}, 2: {3: 1.0}, 3: {}}
    val, flow = oracles.max_flow_exact(cap, 0, 3)
    assert val == pytest.approx(2.0)
    out = sum(flow.get(0, {}).values())
    assert out == pytest.approx(2.0)


def test_max_flow_bottleneck():
    cap = {0: {1: 5.0}, 1: {2: 1.5}, 2: {}}
    val, _ = oracles.max_flow_exact(cap, 0, 2)
    assert val == pytest.approx(1.5)


def test_max_flow_scaling_agrees():
    import random
    rng = random.Random(7)
    for _ in range(5):
        n = 6
        cap = {v: {} for v in range(n)}
        for _ in range(12):
            u, v = rng.sample(range(n), 2)
            cap[u][v] = cap[u].get(v, 0.0) + rng.randint(1, 9)
        v1, _ = oracles.max_flow_exact(cap, 0, n - 1)
        v2 = oracles.max_flow_scaling(cap, 0, n - 1)
        assert v1 == pytest.approx(v2)


def test_report_serialization(small_graph):
    rep = oracles.verify_cut_membership(small_graph, small_graph, eps=0.1)
    obj = rep.to_obj()
    assert obj["ok"] is True and obj["kind"] == "cut"
