"""Adaptive adversaries and the seeded experiment loop.

Strategies see only what their information mode allows: an output-only
adversary reads the current graph and a snapshot of the maintained
sparsifier membership; a randomness-adaptive one additionally reads the
random bits the algorithm has consumed so far.  Attacks never make a
move that would break the min-degree promise — they skip such
candidates, and raise StrategyExhausted when no legal move remains.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import cutkernel, oracles
from .errors import StrategyExhausted
from .graph import DynamicGraph
from .proactive import (SamplerConfig, SamplerState, edge_deletion_amortized,
                        edge_deletion_worstcase)


class LoggedRandom(random.Random):
    """Random stream that records every consumed double (exposed to the
    adversary in randomness-adaptive mode)."""

    def __init__(self, seed):
        super().__init__(seed)
        self.consumed = []

    def random(self):
        x = super().random()
        self.consumed.append(x)
        return x


@dataclass
class AdversaryView:
    graph: DynamicGraph  # current decremental graph (read-only use)
    sparsifier_edges: frozenset  # H-tilde membership snapshot
    stage: int
    algorithm_bits: tuple = ()  # nonempty only in randomness-adaptive mode


class Strategy:
    name = "abstract"

    def next_update(self, view: AdversaryView):
        raise NotImplementedError

    def _legal(self, view, eid, delta_min):
        """A deletion is legal if it keeps every degree >= delta_min."""
        u, v, _ = view.graph._edges[eid]
        if u == v:
            return view.graph.degree(u) - 1 >= delta_min
        return (view.graph.degree(u) - 1 >= delta_min
                and view.graph.degree(v) - 1 >= delta_min)


class Oblivious(Strategy):
    """Fixed random deletion order, committed before the run."""

    name = "oblivious"

    def __init__(self, seed, delta_min=0):
        self.rng = random.Random(seed)
        self.delta_min = delta_min
        self.order = None

    def next_update(self, view):
        if self.order is None:
            self.order = list(view.graph.edge_ids())
            self.rng.shuffle(self.order)
        while self.order:
            eid = self.order[0]
            if not view.graph.has_edge(eid):
                self.order.pop(0)
                continue
            if self._legal(view, eid, self.delta_min):
                return self.order.pop(0)
            self.order.pop(0)
        raise StrategyExhausted("oblivious order exhausted")


class IsolationAttack(Strategy):
    """Try to make the target vertex isolated in the sparsifier: while the
    edge to the current neighbor is sampled, burn that neighbor's other
    edges to force its resampling; otherwise move to the next neighbor."""

    name = "isolation"

    def __init__(self, target, delta_min=0, seed=0):
        self.target = target
        self.delta_min = delta_min
        self.rng = random.Random(seed)

    def next_update(self, view):
        g = view.graph
        x = self.target
        incident = {eid: nbr for eid, nbr, _ in g.snapshot_incident(x)
                    if nbr != x}
        for eid, y in sorted(incident.items()):
            if eid not in view.sparsifier_edges:
                continue
            # (x, y) is currently sampled: delete some (y, z), z != x
            cands = [e for e, z, _ in g.snapshot_incident(y)
                     if z != x and z != y and self._legal(view, e, self.delta_min)]
            if cands:
                return self.rng.choice(cands)
        # every incident edge is out of the sparsifier (or no ammo left):
        # remove the x-edges themselves while legal
        for eid in sorted(incident):
            if self._legal(view, eid, self.delta_min):
                return eid
        raise StrategyExhausted("isolation attack has no legal move")


class MatchingCutAttack(Strategy):
    """Delete edges crossing the planted cut that the sparsifier is not
    currently holding (never deletes an edge in H-tilde)."""

    name = "matching-cut"

    def __init__(self, planted, delta_min=0, seed=0):
        self.planted = frozenset(planted)
        self.delta_min = delta_min
        self.rng = random.Random(seed)

    def crossing(self, g):
        return [eid for eid, u, v, _ in g.edges()
                if u != v and (u in self.planted) != (v in self.planted)]

    def next_update(self, view):
        cands = [eid for eid in self.crossing(view.graph)
                 if eid not in view.sparsifier_edges
                 and self._legal(view, eid, self.delta_min)]
        if cands:
            return self.rng.choice(cands)
        raise StrategyExhausted("no un-sampled crossing edge left")


class CutDrain(Strategy):
    """Drain the planted cut toward the promise boundary, sampled edges
    included."""

    name = "cut-drain"

    def __init__(self, planted, delta_min=0, seed=0):
        self.planted = frozenset(planted)
        self.delta_min = delta_min
        self.rng = random.Random(seed)

    def next_update(self, view):
        cands = [eid for eid, u, v, _ in view.graph.edges()
                 if u != v and (u in self.planted) != (v in self.planted)
                 and self._legal(view, eid, self.delta_min)]
        if cands:
            return self.rng.choice(cands)
        raise StrategyExhausted("planted cut is drained")


def _multi_crossing(n, pairs):
    """Integer crossing counts for a multiset of dense index pairs,
    collapsing parallel edges so the kernel scans each pair once."""
    mult = {}
    for u, v in pairs:
        if u != v:
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + 1
    if not mult:
        return np.zeros(1 << max(n - 1, 0), dtype=np.int64)
    us = [k[0] for k in mult]
    vs = [k[1] for k in mult]
    ws = [float(m) for m in mult.values()]
    return np.rint(cutkernel.crossing_weights(n, us, vs, ws)).astype(np.int64)


def check_cut_bounds(state, ref_graph: DynamicGraph, c_up=8):
    """Exact check of both sparsifier bounds over all 2^(n-1) cuts of the
    reference graph: |E(X, X-bar)|/2 <= w-tilde(X, X-bar) <= c_up * log2(n)
    * |E(X, X-bar)|.  Integer arithmetic throughout (rho is a Fraction).

    Returns (lower_ok, upper_ok, min_ratio, max_ratio)."""
    idx, vs = ref_graph.dense_index()
    n = len(vs)
    cnt_ref = _multi_crossing(
        n, [(idx[u], idx[v]) for _, u, v, _ in ref_graph.edges()])
    members = state.membership()
    sampled = [e for e in members if e not in state.P
               and ref_graph.has_edge(e)]
    cnt_s = _multi_crossing(
        n, [tuple(idx[x] for x in state.h.endpoints(e)) for e in sampled])
    if state.P:
        cnt_p = _multi_crossing(
            n, [(idx[u], idx[v]) for e, (u, v) in state.P.items()
                if ref_graph.has_edge(e)])
    else:
        cnt_p = np.zeros_like(cnt_ref)
    rho = Fraction(state.config.rho)
    a, b = rho.numerator, rho.denominator
    num = cnt_s * b + cnt_p * a  # a * w-tilde, small ints, exact in int64
    ref = cnt_ref
    lower_ok = bool(np.all(2 * num >= ref * a))
    log2n = math.log2(n)
    upper_ok = bool(np.all(num.astype(float) <= c_up * log2n * a
                           * ref.astype(float)))
    live = ref > 0
    if live.any():
        # float argmin/argmax is exact here: distinct small-integer
        # rationals differ by far more than float64 rounding error
        r = num[live].astype(float) / (a * ref[live].astype(float))
        ln = np.flatnonzero(live)
        i_min, i_max = ln[int(np.argmin(r))], ln[int(np.argmax(r))]
        min_ratio = Fraction(int(num[i_min]), a * int(ref[i_min]))
        max_ratio = Fraction(int(num[i_max]), a * int(ref[i_max]))
    else:
        min_ratio = max_ratio = None
    return lower_ok, upper_ok, min_ratio, max_ratio


@dataclass
class ExperimentConfig:
    graph_factory: object  # () -> DynamicGraph
    strategy_factory: object  # (seed) -> Strategy
    phi: float
    delta_min: int
    stages: int
    seed: int = 0
    variant: str = "worstcase"  # or "amortized"
    verify_every: int = 1
    c_up: float = 8.0
    randomness_adaptive: bool = False
    sampler_kwargs: dict = field(default_factory=dict)
    stage_hook: object = None  # called as stage_hook(state, t) after verify


@dataclass
class StageRecord:
    stage: int
    op: str
    size: int
    recourse: int
    promise_ok: bool
    lower_ok: bool = True
    upper_ok: bool = True
    min_ratio: object = None
    max_ratio: object = None


@dataclass
class MetricsTrace:
    records: list = field(default_factory=list)
    exhausted_at: int = None

    def violations(self):
        return [r for r in self.records
                if r.promise_ok and not (r.lower_ok and r.upper_ok)]


def promise_holds(g: DynamicGraph, phi, delta_min):
    """Oracle-side promise label: min degree and exact conductance.

    Fast path for unweighted graphs up to 20 vertices: integer crossing
    counts per collapsed pair, exact rational comparison at the minimum."""
    if g.min_degree() < delta_min:
        return False
    if g.n <= 20 and g.is_unweighted():
        idx, vs = g.dense_index()
        n = len(vs)
        if n <= 1:
            return True
        cnt = _multi_crossing(n, [(idx[u], idx[v])
                                  for _, u, v, _ in g.edges()])
        deg = [int(g.degree(v)) for v in vs]
        vol = cutkernel.subset_volumes_int(n, deg)
        total = sum(deg)
        minvol = np.minimum(vol, total - vol)[1:]
        cnt = cnt[1:]
        live = minvol > 0
        if not live.any():
            return True  # no proper cut with volume on both sides
        if (cnt[live] == 0).any():
            return phi <= 0
        r = cnt[live].astype(float) / minvol[live].astype(float)
        i = int(np.argmin(r))
        best = Fraction(int(cnt[live][i]), int(minvol[live][i]))
        return best >= phi
    val, _ = oracles.exact_conductance(g)
    return val >= phi


def stage_report(state, phi, delta_min, c_up=8.0):
    """Promise label plus (on promise-holding stages) both cut bounds,
    sharing one crossing-count pass for the reference graph."""
    g = state.h
    rec = {"promise_ok": False, "lower_ok": True, "upper_ok": True,
           "min_ratio": None, "max_ratio": None}
    if g.min_degree() < delta_min or not (g.n <= 20 and g.is_unweighted()):
        if g.min_degree() >= delta_min and promise_holds(g, phi, delta_min):
            rec["promise_ok"] = True
            (rec["lower_ok"], rec["upper_ok"], rec["min_ratio"],
             rec["max_ratio"]) = check_cut_bounds(state, g, c_up)
        return rec
    idx, vs = g.dense_index()
    n = len(vs)
    cnt_ref = _multi_crossing(n, [(idx[u], idx[v])
                                  for _, u, v, _ in g.edges()])
    deg = [int(g.degree(v)) for v in vs]
    vol = cutkernel.subset_volumes_int(n, deg)
    minvol = np.minimum(vol, sum(deg) - vol)
    live = minvol[1:] > 0
    if live.any():
        c, m = cnt_ref[1:][live], minvol[1:][live]
        if (c == 0).any():
            return rec  # disconnected: conductance 0
        i = int(np.argmin(c.astype(float) / m.astype(float)))
        if Fraction(int(c[i]), int(m[i])) < phi:
            return rec
    rec["promise_ok"] = True
    members = state.membership()
    sampled = [e for e in members if e not in state.P]
    cnt_s = _multi_crossing(
        n, [tuple(idx[x] for x in g.endpoints(e)) for e in sampled])
    if state.P:
        cnt_p = _multi_crossing(n, [(idx[u], idx[v])
                                    for u, v in state.P.values()])
    else:
        cnt_p = np.zeros_like(cnt_ref)
    rho = Fraction(state.config.rho)
    a, b = rho.numerator, rho.denominator
    num = cnt_s * b + cnt_p * a
    rec["lower_ok"] = bool(np.all(2 * num >= cnt_ref * a))
    rec["upper_ok"] = bool(np.all(
        num.astype(float) <= c_up * math.log2(n) * a * cnt_ref.astype(float)))
    lv = cnt_ref > 0
    if lv.any():
        r = num[lv].astype(float) / (a * cnt_ref[lv].astype(float))
        ln = np.flatnonzero(lv)
        i_min, i_max = ln[int(np.argmin(r))], ln[int(np.argmax(r))]
        rec["min_ratio"] = Fraction(int(num[i_min]), a * int(cnt_ref[i_min]))
        rec["max_ratio"] = Fraction(int(num[i_max]), a * int(cnt_ref[i_max]))
    return rec


def run_experiment(cfg: ExperimentConfig) -> MetricsTrace:
    g = cfg.graph_factory()
    alg_rng = LoggedRandom(cfg.seed * 2 + 1)
    strategy = cfg.strategy_factory(cfg.seed * 2)
    sampler_cfg = SamplerConfig.desk(
        g.n, cfg.phi, cfg.delta_min, g.max_degree(), **cfg.sampler_kwargs)
    state = SamplerState(g, sampler_cfg, alg_rng)
    update = (edge_deletion_worstcase if cfg.variant == "worstcase"
              else edge_deletion_amortized)
    trace = MetricsTrace()

    def verify(t, op, recourse):
        rep = stage_report(state, cfg.phi, cfg.delta_min, cfg.c_up)
        trace.records.append(StageRecord(
            t, op, len(state.membership()), recourse, rep["promise_ok"],
            rep["lower_ok"], rep["upper_ok"], rep["min_ratio"],
            rep["max_ratio"]))
        if cfg.stage_hook is not None:
            cfg.stage_hook(state, t)

    verify(0, "init", 0)
    for t in range(1, cfg.stages + 1):
        bits = tuple(alg_rng.consumed) if cfg.randomness_adaptive else ()
        view = AdversaryView(state.h, frozenset(state.membership()), t, bits)
        try:
            eid = strategy.next_update(view)
        except StrategyExhausted:
            trace.exhausted_at = t
            break
        cs = update(state, eid, t)
        if t % cfg.verify_every == 0:
            verify(t, "delete", len(cs))
    return trace
