"""Expander pruning under edge deletions.

Three flavors over one trimming primitive:
  * amortized: after each deletion, repeatedly find a cut of conductance
    < phi/6 in the surviving induced subgraph (exact enumeration up to 18
    vertices, spectral sweep beyond) and move the smaller-volume side
    into the monotone pruned set P;
  * uniform: additionally remove every surviving vertex whose degree
    drops below Delta/3 (Delta = initial min degree), interleaved with
    trimming until stable;
  * worst-case: a multi-level scheduler over the edge set that releases
    at most gamma pruned EdgeIds per update, refreshes level i on the
    Round_i(tau) grid, and force-completes so P = E by step m/gamma.
"""

from __future__ import annotations

import math
from collections import OrderedDict

from .decomp import certify_part
from .errors import DeletionBudgetExceeded, UnknownEdge
from .graph import DynamicGraph


def trim(h: DynamicGraph, theta):
    """Repeatedly remove the smaller-volume side of any cut of h with
    conductance < theta (plain conductance, h's own degrees).  Mutates h
    by dropping the pruned vertices' edges; returns the pruned vertices.
    Degree-0 vertices are pruned first (zero volume, free)."""
    pruned = []

    def drop(vs):
        for v in vs:
            for eid, _, _ in h.snapshot_incident(v):
                h._delete(eid)
            pruned.append(v)
        live.difference_update(vs)

    live = {v for v in h.vertices() if h.degree(v) > 0}
    drop([v for v in h.vertices() if h.degree(v) == 0 and v not in live])
    while len(live) > 1:
        deg = {v: h.degree(v) for v in live}
        cert = certify_part(h, live, theta, pad_deg=deg)
        if cert.value >= theta:
            break
        side = set(cert.witness)
        other = live - side
        if sum(deg[v] for v in side) > sum(deg[v] for v in other):
            side = other
        drop(sorted(side))
        drop([v for v in list(live) if h.degree(v) == 0])
    return pruned


class AmortizedPruneState:
    """Maintains P subseteq V so the un-pruned part stays a phi/6 expander."""

    def __init__(self, g: DynamicGraph, phi, c_p=8.0, c_e=4.0,
                 enforce_budget=True):
        self.base = g
        self.m0 = g.m
        self.phi = phi
        self.c_p = c_p
        self.c_e = c_e
        self.enforce_budget = enforce_budget
        self.current = g.copy()  # base minus adversary deletions
        self.work = g.copy()  # current restricted to V minus P
        self.P = set()
        self.i = 0

    @property
    def budget(self):
        return self.phi * self.m0 / 10

    def survivors(self):
        return self.work.vertex_set() - self.P

    def pruned_volume(self):
        return self.current.volume(self.P)

    def boundary_count(self):
        return sum(1 for _, u, v, _ in self.current.edges()
                   if (u in self.P) != (v in self.P))

    def _absorb(self, vs):
        for v in vs:
            self.P.add(v)

    def _delete_edge(self, eid):
        if not self.current.has_edge(eid):
            raise UnknownEdge(f"edge {eid}")
        self.i += 1
        if self.enforce_budget and self.i > self.budget:
            raise DeletionBudgetExceeded(
                f"{self.i} deletions > phi*m/10 = {self.budget:.3g}")
        self.current._delete(eid)
        if self.work.has_edge(eid):
            self.work._delete(eid)

    def _trim(self):
        # trim re-reports long-isolated vertices; only newly pruned ones
        # count, or the uniform fixpoint loop would never terminate
        newly = [v for v in trim(self.work, self.phi / 6)
                 if v not in self.P]
        self._absorb(newly)
        return newly


def prune_amortized(s: AmortizedPruneState, deleted):
    """Apply one deletion; returns the newly pruned vertices."""
    s._delete_edge(deleted)
    return s._trim()


class UniformPruneState(AmortizedPruneState):
    """Amortized pruning plus low-degree removal (deg < Delta/3)."""

    def __init__(self, g: DynamicGraph, phi, c_p=30.0, c_e=4.0,
                 enforce_budget=True):
        super().__init__(g, phi, c_p, c_e, enforce_budget)
        self.delta0 = g.min_degree()
        self.low_degree_queue = []

    def _low_degree_pass(self):
        newly = []
        changed = True
        while changed:
            changed = False
            for v in sorted(self.survivors()):
                if self.work.degree(v) < self.delta0 / 3:
                    for eid, _, _ in self.work.snapshot_incident(v):
                        self.work._delete(eid)
                    self._absorb([v])
                    newly.append(v)
                    changed = True
        return newly


def prune_uniform(s: UniformPruneState, deleted):
    """Apply one deletion; returns the newly pruned vertices."""
    s._delete_edge(deleted)
    newly = []
    while True:
        batch = s._low_degree_pass() + s._trim()
        if not batch:
            break
        newly.extend(batch)
    return newly


def round_level(tau, i, T, delta_lvl):
    """Round_i(tau) = floor(tau / (T/delta_lvl^i)) * (T/delta_lvl^i)."""
    p = T / delta_lvl ** i
    if p <= 0:
        return float(tau)
    return math.floor(tau / p) * p


class WcPruneState:
    """Worst-case pruning: monotone pruned EdgeId set P with per-update
    increment <= gamma and P = E by step m/gamma.

    Levels 1..ell+1 (ell = ceil(sqrt(log2 m))) hold nested vertex sets,
    level i refreshed whenever Round_i(step) advances; the top level is
    trimmed at max(phi/6^ell, 1/gamma) and its maximum-volume non-singleton
    component is the designated surviving expander.  Edges outside it are
    queued, and a forced-completion batch of gamma fresh EdgeIds joins the
    queue every step; exactly min(gamma, remaining) queued edges enter P.
    """

    def __init__(self, g: DynamicGraph, phi, gamma=64):
        self.base = g
        self.m0 = g.m
        self.phi = phi
        self.gamma = gamma
        self.ell = max(1, math.ceil(math.sqrt(math.log2(max(g.m, 2)))))
        self.T = phi * g.m / 10
        self.delta_lvl = max(self.T, 1.0) ** (1.0 / self.ell)
        self.phi_levels = [phi / 6 ** i for i in range(self.ell + 2)]
        self.theta_top = max(self.phi_levels[self.ell], 1.0 / gamma)
        self.current = g.copy()  # base minus deletions minus P
        self.P = OrderedDict()  # pruned eids in release order
        self.deleted = set()
        self.step = 0
        self.queue = OrderedDict()  # pending eids awaiting release
        self.forced = iter(g.edge_ids())
        all_vs = frozenset(g.vertex_set())
        self.levels = [{"vertices": all_vs, "timestamp": 0.0}
                       for _ in range(self.ell + 2)]
        self.survivor_vertices = all_vs
        self.W = set()

    def round_of(self, i, tau=None):
        return round_level(self.step if tau is None else tau, i,
                           self.T, self.delta_lvl)

    def _enqueue(self, eid):
        if eid not in self.P and eid not in self.queue:
            self.queue[eid] = None

    def _refresh_levels(self):
        for i in range(1, self.ell + 2):
            r = self.round_of(i)
            if r == self.levels[i]["timestamp"] and self.step != 1:
                continue
            parent = self.levels[i - 1]["vertices"]
            sub = self.current.induced_subgraph(
                parent & self.current.vertex_set())
            theta = (self.theta_top if i == self.ell + 1
                     else self.phi_levels[i])
            pruned = set(trim(sub, theta))
            self.levels[i] = {
                "vertices": frozenset(v for v in parent if v not in pruned),
                "timestamp": r,
            }
        self.survivor_vertices = self.levels[self.ell + 1]["vertices"]

    def survivor_graph(self):
        return self.current.induced_subgraph(self.survivor_vertices)

    def survivor_certificate(self):
        """Certificate that the designated component is a 1/gamma expander
        (exact on <= 18 vertices)."""
        sub = self.survivor_graph()
        live = {v for v in sub.vertices() if sub.degree(v) > 0}
        if not live:
            return None
        return certify_part(sub, live, self.theta_top,
                            pad_deg={v: sub.degree(v) for v in live})


def prune_worstcase(s: WcPruneState, deleted):
    """Apply one deletion; returns the newly pruned EdgeIds (<= gamma)."""
    if deleted not in s.base._edges or deleted in s.deleted:
        raise UnknownEdge(f"edge {deleted}")
    s.step += 1
    if s.step > max(1.0, s.T):
        raise DeletionBudgetExceeded(
            f"{s.step} deletions > phi*m/10 = {s.T:.3g}")
    s.deleted.add(deleted)
    if s.current.has_edge(deleted):
        s.current._delete(deleted)
    s._enqueue(deleted)  # a deleted edge is pruned the same step
    s._refresh_levels()
    surv_eids = set(s.survivor_graph().edge_ids())
    for eid in s.current.edge_ids():
        if eid not in surv_eids:
            s._enqueue(eid)
    for eid in s.deleted:
        s._enqueue(eid)
    # forced completion: gamma fresh ids per step keep the queue stocked
    added = 0
    for eid in s.forced:
        s._enqueue(eid)
        added += 1
        if added >= s.gamma:
            break
    newly = []
    while s.queue and len(newly) < s.gamma:
        eid, _ = s.queue.popitem(last=False)
        s.P[eid] = s.step
        if s.current.has_edge(eid):
            s.current._delete(eid)
        newly.append(eid)
    s.W = set(s.P) - set(s.survivor_graph().edge_ids())
    return newly
