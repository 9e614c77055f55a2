import math
import random

import pytest

from dynsparse.decomp import phi_max
from dynsparse.dyndecomp import dd_init, dd_update
from dynsparse.errors import UnknownEdge
from dynsparse.expanders import circulant_graph
from dynsparse.graph import UpdateEvent

from conftest import random_connected


def make_state(seed=0, uniform=False):
    g = random_connected(12, 30, seed=seed)
    return g, dd_init(g, 0.9 * phi_max(g.m), uniform=uniform)


def test_dd_init_single_top_bucket():
    g, st = make_state()
    top = max(1, math.ceil(math.log2(g.m)))
    assert set(st.buckets) == {top}
    st.check_conservation()


def test_dd_init_rejects_large_phi():
    g = random_connected(10, 20, seed=1)
    with pytest.raises(ValueError):
        dd_init(g, 2 * phi_max(g.m))


def test_bucket_caps_after_inserts():
    g, st = make_state(seed=2)
    rng = random.Random(3)
    for _ in range(15):
        u, v = rng.sample(range(g.n), 2)
        dd_update(st, UpdateEvent.insert(u, v))
        for level, cids in st.buckets.items():
            if cids:
                assert st.bucket_edge_count(level) <= 2 ** level
    st.check_conservation()


def test_conservation_under_mixed_updates():
    g, st = make_state(seed=4)
    rng = random.Random(5)
    for _ in range(40):
        if st.g.m > 5 and rng.random() < 0.5:
            eid = rng.choice(sorted(st.g.edge_ids()))
            dd_update(st, UpdateEvent.delete(eid))
        else:
            u, v = rng.sample(range(st.g.n), 2)
            dd_update(st, UpdateEvent.insert(u, v))
        st.check_conservation()


def test_certificates_stay_valid():
    _, st = make_state(seed=6)
    rng = random.Random(7)
    for _ in range(10):
        eid = rng.choice(sorted(st.g.edge_ids()))
        dd_update(st, UpdateEvent.delete(eid))
    for cl in st.clusters.values():
        if cl.graph.m and cl.certificate is not None:
            assert cl.certificate.ok


def test_delete_unknown_edge():
    _, st = make_state(seed=8)
    with pytest.raises(UnknownEdge):
        dd_update(st, UpdateEvent.delete(10 ** 9))


def test_deletion_only_cluster_logs():
    # after creation a cluster only ever loses edges: deletions and
    # trim evictions, never inserts
    _, st = make_state(seed=9)
    rng = random.Random(10)
    for _ in range(20):
        if st.g.m <= 5:
            break
        eid = rng.choice(sorted(st.g.edge_ids()))
        dd_update(st, UpdateEvent.delete(eid))
    for cl in st.clusters.values():
        kinds = [k for k, _ in cl.events]
        assert kinds[0] == "create"
        assert all(k in ("delete", "evict") for k in kinds[1:])


def test_uniform_mode_rebuild_counter():
    g, st = make_state(seed=11, uniform=True)
    rng = random.Random(12)
    for _ in range(25):
        if st.g.m <= 5:
            break
        eid = rng.choice(sorted(st.g.edge_ids()))
        dd_update(st, UpdateEvent.delete(eid))
        st.check_conservation()
