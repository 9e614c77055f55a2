import math
import random

import pytest

from dynsparse import oracles
from dynsparse.errors import DeletionBudgetExceeded, UnknownEdge
from dynsparse.expanders import circulant_graph
from dynsparse.pruning import (AmortizedPruneState, UniformPruneState,
                               WcPruneState, prune_amortized, prune_uniform,
                               prune_worstcase, round_level, trim)


def expander16():
    return circulant_graph(16, range(1, 8), copies=2)  # 28-regular


def test_trim_noop_on_expander():
    g = expander16()
    assert not trim(g.copy(), 0.2)


def test_trim_removes_weakly_attached_side():
    g = circulant_graph(12, [1, 2, 3])
    # cut vertex 0 down to a single edge: conductance of {0} drops
    for eid, nbr, _ in g.snapshot_incident(0)[1:]:
        g.delete_edge(eid)
    pruned = trim(g, 0.4)
    assert 0 in pruned


def test_amortized_budget_enforced():
    g = expander16()
    s = AmortizedPruneState(g, 0.1)  # budget = phi*m/10 = 2.24
    eids = sorted(g.edge_ids())
    prune_amortized(s, eids[0])
    prune_amortized(s, eids[1])
    with pytest.raises(DeletionBudgetExceeded):
        prune_amortized(s, eids[2])


def test_amortized_invariants():
    g = expander16()
    phi = 0.3
    s = AmortizedPruneState(g, phi)
    rng = random.Random(5)
    prev = set()
    for i in range(1, 6):
        eid = rng.choice(sorted(s.work.edge_ids()))
        prune_amortized(s, eid)
        assert prev <= s.P  # monotone
        prev = set(s.P)
        assert s.pruned_volume() <= 8 * i / phi
        assert s.boundary_count() <= 4 * i


def test_amortized_unknown_edge():
    s = AmortizedPruneState(expander16(), 0.3)
    with pytest.raises(UnknownEdge):
        prune_amortized(s, 10 ** 9)


def test_uniform_prunes_low_degree():
    g = circulant_graph(16, [1, 2])  # 4-regular, delta0=4, delta0 % 3 != 0
    s = UniformPruneState(g, 0.2, enforce_budget=False)
    # drive one vertex below delta0/3 by deleting its incident edges
    inc = [eid for eid, _, _ in g.snapshot_incident(0)]
    newly = []
    for eid in inc[:3]:
        newly.extend(prune_uniform(s, eid))
    assert 0 in s.P
    assert s.pruned_volume() <= 30 * s.i / s.phi


def test_worstcase_increment_and_completion():
    g = circulant_graph(16, range(1, 8))  # 14-regular, m = 112
    gamma = 40  # ceil(m/gamma) = 3 steps fit inside the phi*m/10 budget
    s = WcPruneState(g, 0.3, gamma=gamma)
    rng = random.Random(1)
    prev = 0
    steps = 0
    while len(s.P) < g.m:
        live = sorted(s.current.edge_ids())
        if not live:
            break
        prune_worstcase(s, rng.choice(live))
        steps += 1
        assert len(s.P) - prev <= gamma
        prev = len(s.P)
    assert len(s.P) == g.m
    assert steps <= math.ceil(g.m / gamma)


def test_worstcase_budget():
    g = circulant_graph(16, range(1, 8))
    s = WcPruneState(g, 0.3, gamma=200)  # T = 3.36
    eids = sorted(g.edge_ids())
    for k in range(3):
        prune_worstcase(s, eids[k])
    with pytest.raises(DeletionBudgetExceeded):
        prune_worstcase(s, eids[3])


def test_worstcase_survivor_certificate():
    g = expander16()
    s = WcPruneState(g, 0.3, gamma=64)
    prune_worstcase(s, sorted(g.edge_ids())[0])
    cert = s.survivor_certificate()
    if cert is not None:
        assert cert.ok  # survivor is a 1/gamma expander


def test_round_level_rounding():
    T, d = 16.0, 2.0
    assert round_level(7, 1, T, d) == 0.0  # granularity T/d = 8
    assert round_level(9, 1, T, d) == 8.0
    assert round_level(9, 2, T, d) == 8.0  # granularity T/d^2 = 4
    assert round_level(3, 2, T, d) == 0.0
