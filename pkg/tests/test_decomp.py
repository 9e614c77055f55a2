import math
from fractions import Fraction

import pytest

from dynsparse import oracles
from dynsparse.decomp import (certify_part, decompose_base, decompose_edges,
                              decompose_uniform, phi_max)
from dynsparse.expanders import circulant_graph
from dynsparse.graph import DynamicGraph

from conftest import random_connected


def dumbbell(k):
    """Two k-cliques joined by one bridge: conductance ~ 1/k^2."""
    g = DynamicGraph(2 * k)
    for base in (0, k):
        for u in range(k):
            for v in range(u + 1, k):
                g.insert_edge(base + u, base + v)
    g.insert_edge(0, k)
    return g


def test_phi_max_formula():
    assert phi_max(16) == pytest.approx(0.5 / math.sqrt(4))
    assert phi_max(2) == pytest.approx(0.5)


def test_certify_part_accepts_expander():
    g = circulant_graph(10, [1, 2, 3])
    cert = certify_part(g, set(g.vertices()), 0.2)
    assert cert.ok


def test_certify_part_rejects_bottleneck():
    g = dumbbell(5)
    cert = certify_part(g, set(g.vertices()), 0.2)
    assert not cert.ok
    # the witness cut must actually have low padded conductance
    assert cert.witness is not None


def test_decompose_base_splits_dumbbell():
    g = dumbbell(5)
    part = decompose_base(g, 0.2)
    assert len(part.parts) >= 2
    covered = set()
    for p in part.parts:
        assert not (covered & set(p))
        covered |= set(p)
    assert covered == g.vertex_set()
    assert all(c.ok for c in part.certificates)


def test_decompose_base_keeps_expander_whole():
    g = circulant_graph(10, [1, 2, 3])
    part = decompose_base(g, 0.1)
    assert len(part.parts) == 1


def test_decompose_edges_conservation():
    for seed in range(4):
        g = random_connected(12, 30, seed=seed)
        phi = 0.5 * phi_max(g.m)
        dec = decompose_edges(g, phi)
        cluster_edges = []
        for c in dec.clusters:
            cluster_edges.extend(c.edge_ids())
        assert sorted(cluster_edges) == sorted(g.edge_ids())
        assert all(c.ok for c in dec.certificates)


def test_decompose_uniform_covers_and_certifies():
    g = random_connected(12, 36, seed=9)
    phi = 0.5 * phi_max(g.m)
    dec = decompose_uniform(g, phi)
    seen = []
    for uc in dec.clusters:
        seen.extend(uc.graph.edge_ids())
        assert uc.certificate.ok
        assert uc.delta >= 9
    assert sorted(seen) == sorted(g.edge_ids())


def test_decomposed_parts_have_low_internal_conductance_bound():
    g = dumbbell(4)
    part = decompose_base(g, 0.2)
    for p in part.parts:
        if len(p) < 2:
            continue
        sub = g.induced_subgraph(set(p))
        if sub.m == 0:
            continue
        phi, _ = oracles.exact_conductance(sub)
        # certified parts are phi/6-expanders at worst
        assert phi == 0 or phi >= Fraction(1, 60)
