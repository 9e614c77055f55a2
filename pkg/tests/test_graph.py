import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynsparse.errors import NonPositiveWeight, UnknownEdge, UnknownVertex
from dynsparse.graph import DynamicGraph, UpdateEvent, replay

from conftest import random_connected


def test_insert_assigns_fresh_ids():
    g = DynamicGraph(3)
    e0 = g.insert_edge(0, 1)
    e1 = g.insert_edge(1, 2)
    assert e0 != e1
    assert g.m == 2
    assert g.endpoints(e0) == (0, 1)


def test_delete_and_unknown_edge():
    g = DynamicGraph(2)
    e = g.insert_edge(0, 1)
    g.delete_edge(e)
    assert g.m == 0
    with pytest.raises(UnknownEdge):
        g.delete_edge(e)


def test_weight_validation():
    g = DynamicGraph(2)
    with pytest.raises(NonPositiveWeight):
        g.insert_edge(0, 1, 0)
    with pytest.raises(NonPositiveWeight):
        g.insert_edge(0, 1, -2.5)


def test_unknown_vertex():
    g = DynamicGraph(2)
    with pytest.raises(UnknownVertex):
        g.insert_edge(0, 5)


def test_degree_volume_multiedges_and_loops():
    g = DynamicGraph(3)
    g.insert_edge(0, 1)
    g.insert_edge(0, 1)
    g.insert_edge(2, 2)  # self-loop counts once toward degree
    assert g.degree(0) == 2
    assert g.degree(2) == 1
    assert g.volume({0, 1}) == 4
    assert g.volume() == 5
    assert g.min_degree() == 1 and g.max_degree() == 2


def test_apply_update_changeset():
    g = DynamicGraph(4)
    cs = g.apply_update(UpdateEvent.insert(0, 1, 2))
    assert len(cs.inserted) == 1
    eid = cs.inserted[0][0]
    assert g.weight(eid) == 2
    cs = g.apply_update(UpdateEvent.delete(eid))
    assert cs.deleted == [eid]
    e1 = g.insert_edge(0, 2)
    e2 = g.insert_edge(1, 3)
    cs = g.apply_update(UpdateEvent.batch_delete([e1, e2]))
    assert sorted(cs.deleted) == sorted([e1, e2])
    assert g.m == 0


def test_replay_reproduces_final_graph(small_graph):
    g = small_graph
    log = [UpdateEvent.insert(0, 5, 3), UpdateEvent.insert(2, 7)]
    h = g.copy()
    css = [h.apply_update(ev) for ev in log]
    log.append(UpdateEvent.delete(css[0].inserted[0][0]))
    h.apply_update(log[-1])
    assert replay(g, log).edge_multiset() == h.edge_multiset()


def test_copy_is_independent(small_graph):
    h = small_graph.copy()
    eid = next(iter(h.edge_ids()))
    h.delete_edge(eid)
    assert small_graph.has_edge(eid)
    assert small_graph.m == h.m + 1


def test_induced_and_edge_subgraph(small_graph):
    g = small_graph
    sub = g.induced_subgraph({0, 1, 2, 3})
    for eid, u, v, _ in sub.edges():
        assert {u, v} <= {0, 1, 2, 3}
        assert g.has_edge(eid)
    eids = sorted(g.edge_ids())[:5]
    esub = g.edge_subgraph(eids)
    assert sorted(esub.edge_ids()) == eids


def test_neighbors_and_incident(small_graph):
    g = small_graph
    for v in g.vertices():
        inc = g.snapshot_incident(v)
        assert len(inc) == sum(1 for eid, nbr, _ in inc)
        assert set(g.neighbors(v)) == {nbr for _, nbr, _ in inc}


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 8), st.lists(st.integers(0, 10 ** 6), max_size=40),
       st.randoms(use_true_random=False))
def test_random_op_sequences_keep_invariants(n, choices, rng):
    g = DynamicGraph(n)
    for c in choices:
        if g.m and c % 3 == 0:
            eids = sorted(g.edge_ids())
            g.delete_edge(eids[c % len(eids)])
        else:
            g.insert_edge(c % n, (c // n) % n)
    g.check_degree_cache()
    assert g.m == len(list(g.edge_ids()))
    assert g.volume() == sum(g.degree(v) for v in g.vertices())


def test_event_fields_frozen():
    ev = UpdateEvent.insert(0, 1)
    with pytest.raises(Exception):
        ev.u = 5
