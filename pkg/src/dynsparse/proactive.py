"""Adaptive-adversary cut sparsifier via proactive resampling.

Every vertex v keeps a sampled subset S_v of its incident edges; the
sparsifier is the union of all S_v at weight 1/rho (plus a pruned-edge
overlay P at unit weight).  An edge deletion at stage t schedules both
endpoints for resampling at stages t, t+2^0, t+2^1, ... (geometric
spacing, (1+eps_sched)^i in general); the amortized variant additionally
reschedules every neighbor of an endpoint whose degree crosses a
multiple of zeta, the worst-case variant spreads those neighbor
reschedules round-robin, a ceil(Delta_max/zeta)+1 window per deletion.
After the schedule update, every vertex scheduled at t gets a fresh
wholesale sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import StageMismatch, UnknownEdge, UnknownVertex
from .graph import ChangeSet, DynamicGraph

PAPER_C_RHO = 2 ** 16


def subset_sample(universe_size, p, rng):
    """Indices of a p-Bernoulli subset of range(universe_size), drawn by
    geometric gap-skipping so the cost is proportional to the output."""
    if not 0 <= p <= 1:
        raise ValueError(f"p={p} outside [0,1]")
    if p == 0 or universe_size == 0:
        return []
    if p == 1:
        return list(range(universe_size))
    out = []
    log_q = math.log1p(-p)
    i = -1
    while True:
        r = 1.0 - rng.random()  # in (0, 1]
        i += 1 + int(math.log(r) / log_q)
        if i >= universe_size:
            return out
        out.append(i)


@dataclass
class SamplerConfig:
    alpha: float
    phi: float
    delta_min: int
    delta_max: int
    rho: object  # Fraction or float in (0, 1]
    zeta: int
    c_rho: float
    eps_sched: float = 1.0
    horizon: int = 10 ** 9

    @staticmethod
    def desk(n, phi, delta_min, delta_max, alpha=1.0, eps_sched=1.0,
             horizon=None, target_edges_per_vertex=20):
        """Desk-scale constants: rho chosen so rho * Delta_max is about
        target (exact Fraction); the implied c_rho is recorded."""
        rho = min(Fraction(1), Fraction(target_edges_per_vertex, delta_max))
        c_rho = float(rho) * delta_min ** 2 * phi ** 2 / (
            (alpha + 1) * math.log(max(n, 2)) * delta_max)
        return SamplerConfig(alpha, phi, delta_min, delta_max, rho,
                             max(1, math.ceil(phi * delta_min)), c_rho,
                             eps_sched, horizon or 10 ** 9)

    @staticmethod
    def paper(n, phi, delta_min, delta_max, alpha=1.0, eps_sched=1.0,
              horizon=None):
        rho = min(1.0, PAPER_C_RHO * (alpha + 1) * math.log(max(n, 2))
                  * delta_max / (delta_min ** 2 * phi ** 2))
        return SamplerConfig(alpha, phi, delta_min, delta_max, rho,
                             max(1, math.ceil(phi * delta_min)), PAPER_C_RHO,
                             eps_sched, horizon or 10 ** 9)

    def stage_offsets(self):
        """1, 2, 4, ... for eps_sched=1; ceil((1+eps)^i) in general."""
        i = 0
        seen = set()
        while True:
            off = math.ceil((1.0 + self.eps_sched) ** i)
            if off > self.horizon:  # also avoids float overflow
                return
            if off not in seen:
                seen.add(off)
                yield off
            i += 1


@dataclass
class ResampleRecord:
    stage: int
    next_scheduled: float  # min future scheduled stage right after, or inf


class SamplerState:
    """Decremental sampler over a working copy of the input expander."""

    def __init__(self, g: DynamicGraph, config: SamplerConfig, rng):
        self.h = g.copy()
        self.config = config
        self.rng = rng
        self.t = 0
        self.S = {}
        self.T_sched = {v: set() for v in self.h.vertices()}
        self.T_deg = {v: [] for v in self.h.vertices()}
        self.P = {}  # pruned overlay: eid -> (u, v)
        self.resamples = {v: [] for v in self.h.vertices()}
        self.last_resample_count = 0
        for v in self.h.vertices():  # T_schedule initialized to {0}
            self._resample(v)

    # -- sampling ----------------------------------------------------------

    def _resample(self, v):
        inc = [eid for eid, _, _ in self.h.snapshot_incident(v)]
        picked = subset_sample(len(inc), float(self.config.rho), self.rng)
        self.S[v] = {inc[i] for i in picked}
        future = [s for s in self.T_sched[v] if s > self.t]
        self.resamples[v].append(
            ResampleRecord(self.t, min(future) if future else math.inf))

    def membership(self):
        out = set(self.P)
        for s in self.S.values():
            out |= s
        return out

    def _schedule(self, v, t):
        sched = self.T_sched[v]
        sched.add(t)
        for off in self.config.stage_offsets():
            if t + off > self.config.horizon:
                break
            sched.add(t + off)

    def _run_scheduled(self, t):
        count = 0
        for v in self.h.vertices():
            if t in self.T_sched[v]:
                self._resample(v)
                count += 1
            self.T_sched[v] = {s for s in self.T_sched[v] if s > t}
        self.last_resample_count = count
        return count

    def _resolve(self, edge):
        """Accept an EdgeId or an (u, v) pair (lowest live EdgeId wins)."""
        if isinstance(edge, tuple):
            u, v = edge
            for eid, a, b, _ in self.h.edges():
                if {a, b} == {u, v} or (u == v and a == b == u):
                    return eid
            raise UnknownEdge(f"edge {edge}")
        if not self.h.has_edge(edge):
            raise UnknownEdge(f"edge {edge}")
        return edge

    def _delete(self, eid):
        u, v, _ = self.h._edges[eid]
        self.h._delete(eid)
        self.S[u].discard(eid)
        self.S[v].discard(eid)
        return u, v

    def _begin_stage(self, t):
        if t != self.t + 1:
            raise StageMismatch(f"stage {t}, expected {self.t + 1}")
        self.t = t

    # -- metrics -----------------------------------------------------------

    def relevant_resample_count(self, v, horizon=None):
        """Number of executed resamplings of v that were relevant at the
        horizon: no stage was scheduled in (t', horizon] when they ran.
        The stage-0 initialization sample is not counted (it is not an
        adversarial stage)."""
        if v not in self.resamples:
            raise UnknownVertex(f"vertex {v}")
        t = self.t if horizon is None else horizon
        return sum(1 for r in self.resamples[v]
                   if 0 < r.stage <= t < r.next_scheduled)

    def schedule_sizes(self):
        return {v: len(s) for v, s in self.T_sched.items()}


def sample_vertex(state: SamplerState, v):
    """Wholesale replacement of S_v; returns the new S_v."""
    if not state.h.has_vertex(v):
        raise UnknownVertex(f"vertex {v}")
    state._resample(v)
    return set(state.S[v])


def _emit_delta(state, before):
    after = state.membership()
    cs = ChangeSet()
    for eid in sorted(after - before):
        u, v = (state.P[eid] if eid in state.P
                else state.h.endpoints(eid))
        w = 1 if eid in state.P else 1 / state.config.rho
        cs.inserted.append((eid, u, v, w))
    cs.deleted.extend(sorted(before - after))
    return cs


def edge_deletion_amortized(state: SamplerState, edge, t) -> ChangeSet:
    """Algorithm-2 update: endpoint scheduling plus bulk neighbor
    rescheduling every zeta incident deletions."""
    before = state.membership()
    state._begin_stage(t)
    eid = state._resolve(edge)
    u, v = state._delete(eid)
    for z in (u, v):
        state._schedule(z, t)
        if state.h.degree(z) % state.config.zeta == 0:
            state.T_deg[z].append(t)
            for y in state.h.neighbors(z):
                state._schedule(y, t)
    state._run_scheduled(t)
    return _emit_delta(state, before)


def _worstcase_reschedule(state, z, t):
    cfg = state.config
    state._schedule(z, t)
    i = state.h.degree(z) % cfg.zeta
    nbrs = state.h.neighbors(z)  # snapshot, ascending first-EdgeId order
    if not nbrs:
        return
    window = math.floor(cfg.delta_max / cfg.zeta)
    for j in range(math.ceil(cfg.delta_max / cfg.zeta) + 1):
        y = nbrs[(i * window + j) % len(nbrs)]
        state._schedule(y, t)


def edge_deletion_worstcase(state: SamplerState, edge, t) -> ChangeSet:
    """Algorithm-3 update: a round-robin neighbor window per deletion in
    place of the bulk zeta-divisibility trigger."""
    before = state.membership()
    state._begin_stage(t)
    eid = state._resolve(edge)
    u, v = state._delete(eid)
    for z in (u, v):
        _worstcase_reschedule(state, z, t)
    state._run_scheduled(t)
    return _emit_delta(state, before)


def edge_deletion_pruned(state: SamplerState, edge, t, pruned) -> ChangeSet:
    """Worst-case update that also processes the newly pruned edges P_t as
    deletions and then carries them in the sparsifier at unit weight
    forever.  `edge` may be None (prune-only stage); the adversarially
    deleted edge never enters the overlay (it left the graph)."""
    before = state.membership()
    state._begin_stage(t)
    eid = state._resolve(edge) if edge is not None else None
    for p in pruned:
        if p in state.P:
            raise UnknownEdge(f"edge {p} pruned twice")
    work = []
    if eid is not None:
        work.append((eid, False))
    for p in sorted(pruned):
        if p != eid and state.h.has_edge(p):
            work.append((p, True))
    for e, overlay in work:
        u, v = state._delete(e)
        if overlay:
            state.P[e] = (u, v)
        for z in (u, v):
            _worstcase_reschedule(state, z, t)
    state._run_scheduled(t)
    return _emit_delta(state, before)


def current_sparsifier(state: SamplerState) -> DynamicGraph:
    """The weighted sparsifier: sampled edges at 1/rho, overlay at 1."""
    out = DynamicGraph(state.h.vertex_set())
    w_sample = 1 / state.config.rho
    for eid in sorted(state.membership()):
        if eid in state.P:
            u, v = state.P[eid]
            out._insert(u, v, 1, eid=eid)
        else:
            u, v = state.h.endpoints(eid)
            out._insert(u, v, w_sample, eid=eid)
    return out


def cut_weight(state: SamplerState, side, initial_graph=None) -> object:
    """w-tilde of the cut (side, complement): sampled crossing edges at
    1/rho plus pruned crossing edges at unit weight.  Exact (Fraction)
    when rho is a Fraction."""
    side = set(side)
    crossing_sampled = 0
    members = state.membership()
    for eid in members:
        if eid in state.P:
            u, v = state.P[eid]
            if u != v and (u in side) != (v in side):
                crossing_sampled += 0  # counted below at unit weight
        else:
            u, v = state.h.endpoints(eid)
            if u != v and (u in side) != (v in side):
                crossing_sampled += 1
    crossing_pruned = sum(
        1 for eid, (u, v) in state.P.items()
        if u != v and (u in side) != (v in side))
    return crossing_sampled / state.config.rho + crossing_pruned
