import math
import random
from fractions import Fraction

import pytest

from dynsparse.errors import StageMismatch
from dynsparse.expanders import circulant_graph
from dynsparse.proactive import (SamplerConfig, SamplerState,
                                 current_sparsifier, cut_weight,
                                 edge_deletion_amortized,
                                 edge_deletion_pruned,
                                 edge_deletion_worstcase, subset_sample)


def make_state(seed=0, variant_cfg=None):
    g = circulant_graph(16, range(1, 8), copies=2)  # 28-regular
    cfg = variant_cfg or SamplerConfig.desk(g.n, 0.3, 20, g.max_degree())
    return g, SamplerState(g, cfg, random.Random(seed))


def test_subset_sample_matches_bernoulli_marginals():
    rng = random.Random(0)
    hits = [0] * 50
    trials = 4000
    for _ in range(trials):
        for i in subset_sample(50, 0.3, rng):
            hits[i] += 1
    freqs = [h / trials for h in hits]
    # 3-sigma band around p = 0.3
    band = 3 * math.sqrt(0.3 * 0.7 / trials)
    assert all(abs(f - 0.3) < band + 0.02 for f in freqs)


def test_subset_sample_extremes():
    rng = random.Random(1)
    assert subset_sample(10, 1.0, rng) == list(range(10))
    assert subset_sample(10, 0.0, rng) == []


def test_desk_config_rho_and_zeta():
    g = circulant_graph(16, range(1, 8), copies=2)
    cfg = SamplerConfig.desk(g.n, 0.3, 20, g.max_degree())
    assert cfg.rho == min(1, Fraction(20, 28))
    assert cfg.zeta == max(1, math.ceil(0.3 * 20))


def test_stage_offsets_strictly_increasing():
    g = circulant_graph(16, range(1, 8), copies=2)
    cfg = SamplerConfig.desk(g.n, 0.3, 20, g.max_degree())
    offs = list(cfg.stage_offsets())
    assert offs == sorted(set(offs))
    assert offs[0] == 1


def test_membership_all_edges_at_rho_one():
    g = circulant_graph(8, [1, 2])  # max degree 4 < 20: rho saturates at 1
    cfg = SamplerConfig.desk(g.n, 0.3, 4, g.max_degree())
    assert cfg.rho == 1
    st = SamplerState(g, cfg, random.Random(0))
    assert st.membership() == set(g.edge_ids())


def test_stage_mismatch():
    g, st = make_state()
    eids = sorted(g.edge_ids())
    edge_deletion_amortized(st, eids[0], 1)
    with pytest.raises(StageMismatch):
        edge_deletion_amortized(st, eids[1], 3)  # skipped stage 2


def test_deletion_removes_edge_everywhere():
    g, st = make_state()
    eid = sorted(g.edge_ids())[0]
    edge_deletion_amortized(st, eid, 1)
    assert not st.h.has_edge(eid)
    assert eid not in st.membership()


def test_worstcase_variant_bounded_recourse():
    g, st = make_state(seed=3)
    rng = random.Random(7)
    for t in range(1, 11):
        eid = rng.choice(sorted(st.h.edge_ids()))
        cs = edge_deletion_worstcase(st, eid, t)
        # per-stage work is one window, not a full reschedule
        assert len(cs.inserted) + len(cs.deleted) <= 2 * g.max_degree()


def test_pruned_variant_overlay():
    g, st = make_state(seed=4)
    eids = sorted(g.edge_ids())
    overlay = set(eids[1:5])
    edge_deletion_pruned(st, eids[0], 1, overlay)
    assert overlay <= st.membership()
    spars = current_sparsifier(st)
    for e in overlay:
        assert spars.weight(e) == 1  # pruned edges carried at unit weight


def test_relevant_resample_bound_small_run():
    g, st = make_state(seed=5)
    rng = random.Random(9)
    for t in range(1, 21):
        eid = rng.choice(sorted(st.h.edge_ids()))
        edge_deletion_amortized(st, eid, t)
        bound = math.ceil(math.log2(t)) + 1 if t > 1 else 1
        for v in st.h.vertices():
            assert st.relevant_resample_count(v) <= bound


def test_cut_weight_counts_overlay_and_sample():
    g, st = make_state(seed=6)
    side = set(range(8))
    w = cut_weight(st, side)
    ref = sum(1 for _, u, v, _ in g.edges()
              if (u in side) != (v in side))
    # sampled edges are reweighted by 1/rho: total within the 8log(n) band
    assert w > 0
    assert float(w) <= 8 * math.log2(g.n) * ref
