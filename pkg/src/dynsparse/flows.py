"""Multiplicative-weights flow applications on undirected
vertex-capacitated graphs: maximum throughput flow, maximum concurrent
flow, a capacity-level bottleneck estimator, and randomized congestion
rounding.

Both solvers simulate Fleischer's edge-capacitated algorithms on the
directed companion (v_in, v_out split) without materializing it: the
only positive lengths live on the split arcs of finite-capacity
non-terminal vertices, so they are carried as vertex weights
w'(v) = l(v_in, v_out) and turned into edge weights
w(u, v) = (w'(u) + w'(v)) / 2, which preserves path lengths for every
terminal pair.  Shortest paths come from a pluggable oracle (exact
Dijkstra, or Dijkstra on a spanner whose weights are refreshed only
after growing by a factor of 2).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .errors import (BadEpsilon, PairDisconnected, UnboundedFlow,
                     UnknownVertex, UnnormalizedFlow)
from .graph import DynamicGraph

FEAS_TOL = 1e-9


@dataclass
class VertexCapGraph:
    graph: DynamicGraph
    cap: dict  # v -> positive real or math.inf

    def __post_init__(self):
        for v in self.graph.vertices():
            c = self.cap.get(v, math.inf)
            if not c > 0:
                raise ValueError(f"capacity {c} at vertex {v}")
            self.cap[v] = c
        extra = set(self.cap) - self.graph.vertex_set()
        if extra:
            raise UnknownVertex(f"capacities for absent vertices {extra}")

    def with_terminals(self, pairs) -> "VertexCapGraph":
        """Copy with every terminal forced to infinite capacity."""
        cap = dict(self.cap)
        for p in pairs:
            cap[p.s] = math.inf
            cap[p.t] = math.inf
        return VertexCapGraph(self.graph, cap)


@dataclass(frozen=True)
class DemandPair:
    s: int
    t: int
    d: float = 1.0

    def __post_init__(self):
        if self.s == self.t:
            raise ValueError(f"demand pair with s == t == {self.s}")


def vertex_to_edge_reduce(vg: VertexCapGraph):
    """Directed edge-capacitated companion as a capacity map
    {node: {node: cap}} with nodes ("in", v) / ("out", v): the split arc
    carries c(v), every undirected edge becomes two infinite arcs."""
    cap = {}
    for v in vg.graph.vertices():
        cap.setdefault(("in", v), {})[("out", v)] = vg.cap[v]
    for _, u, v, _ in vg.graph.edges():
        if u == v:
            continue
        cap.setdefault(("out", u), {})[("in", v)] = math.inf
        cap.setdefault(("out", v), {})[("in", u)] = math.inf
    return cap


def vertex_capacitated_max_flow(vg: VertexCapGraph, s, t):
    """Exact s-t max flow respecting vertex capacities (terminals
    uncapacitated), via the split-graph reduction."""
    from .oracles import max_flow_exact

    capped = vg.with_terminals([DemandPair(s, t)])
    cap = vertex_to_edge_reduce(capped)
    value, _ = max_flow_exact(cap, ("out", s), ("in", t))
    return value


# -- shortest-path oracles ----------------------------------------------


def _adjacency(g: DynamicGraph):
    adj = {v: [] for v in g.vertices()}
    for _, u, v, _ in g.edges():
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    return adj


class ExactSP:
    """Dijkstra on the full graph with live vertex weights."""

    alpha = 1.0

    def __init__(self, g: DynamicGraph):
        self.adj = _adjacency(g)

    def edge_weight(self, wp, u, v):
        return (wp.get(u, 0.0) + wp.get(v, 0.0)) / 2.0

    def shortest_paths(self, source, wp):
        dist = {source: 0.0}
        parent = {source: None}
        heap = [(0.0, source)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, math.inf):
                continue
            for v in self.adj[u]:
                nd = d + self.edge_weight(wp, u, v)
                if nd < dist.get(v, math.inf) - 1e-18:
                    dist[v] = nd
                    parent[v] = u
                    heapq.heappush(heap, (nd, v))
        return dist, parent


class SpannerSP(ExactSP):
    """Dijkstra restricted to a spanner subgraph with lazily refreshed
    vertex weights: a weight is pushed to the cache only once it has
    grown by a factor of at least 2, so the advertised approximation is
    alpha = 2 * stretch."""

    def __init__(self, spanner: DynamicGraph, stretch):
        self.adj = _adjacency(spanner)
        self.stretch = stretch
        self.alpha = 2.0 * stretch
        self.cache = {}
        self.refreshes = 0

    def edge_weight(self, wp, u, v):
        for x in (u, v):
            live = wp.get(x, 0.0)
            if live >= 2.0 * self.cache.get(x, 0.0) and live > 0:
                self.cache[x] = live
                self.refreshes += 1
        return (self.cache.get(u, 0.0) + self.cache.get(v, 0.0)) / 2.0


def _extract_path(parent, s, t):
    if t not in parent:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return path


# -- flow state ----------------------------------------------------------


@dataclass
class FlowState:
    eps: float
    delta: float
    alpha: float
    cap: dict
    lengths: dict = field(default_factory=dict)  # vertex weights w'
    paths: dict = field(default_factory=dict)  # j -> [(path, amount)]
    values: dict = field(default_factory=dict)  # j -> scaled flow value
    lam: float = math.nan  # concurrent: min_j value_j / d_j
    sp_calls: int = 0
    augmentations: int = 0
    monotonicity_violations: int = 0
    demand_doublings: int = 0

    def vertex_flow(self, v):
        tot = 0.0
        for plist in self.paths.values():
            for path, amt in plist:
                if v in path:
                    tot += amt
        return tot

    def feasible(self, tol=FEAS_TOL):
        for v, c in self.cap.items():
            if c != math.inf and self.vertex_flow(v) > c + tol:
                return False
        return True

    def total_value(self):
        return sum(self.values.values())

    def normalized_paths(self, tol=1e-6):
        """Per-commodity (path, probability) with probabilities summing
        to 1: the input to congestion rounding."""
        out = {}
        for j, plist in self.paths.items():
            total = sum(a for _, a in plist)
            if total <= 0:
                raise UnnormalizedFlow(f"commodity {j} carries no flow")
            out[j] = [(path, a / total) for path, a in plist]
            if abs(sum(p for _, p in out[j]) - 1.0) > tol:
                raise UnnormalizedFlow(f"commodity {j} sums to {total}")
        return out


def _bump_length(state: FlowState, wp, v, c_push, cap):
    if cap == math.inf:
        return
    old = wp[v]
    wp[v] = old * (1.0 + state.eps * c_push / cap)
    if wp[v] < old - 1e-18:
        state.monotonicity_violations += 1


def _record(state, j, path, amount):
    state.paths.setdefault(j, []).append((list(path), amount))
    state.augmentations += 1


def throughput_delta(n, eps):
    return (1 + eps) / ((1 + eps) * n) ** (1.0 / eps)


def concurrent_delta(m, eps):
    return (2 * m) ** (-1.0 / eps)


def max_throughput(vg: VertexCapGraph, pairs, eps, sp_oracle=None) -> FlowState:
    """Fleischer's multi-commodity max-throughput flow simulated on the
    undirected vertex-capacitated graph; value within
    alpha * (1 + O(eps)) of optimal."""
    if not 0 < eps < 1:
        raise BadEpsilon(f"eps={eps} outside (0, 1)")
    pairs = list(pairs)
    vg = vg.with_terminals(pairs)
    g, cap = vg.graph, vg.cap
    sp = sp_oracle if sp_oracle is not None else ExactSP(g)
    n = g.n
    delta = throughput_delta(n, eps)
    state = FlowState(eps, delta, sp.alpha, cap)
    wp = {v: (delta if cap[v] != math.inf else 0.0) for v in g.vertices()}
    state.lengths = wp
    by_source = {}
    for j, p in enumerate(pairs):
        by_source.setdefault(p.s, []).append((j, p.t))
        state.paths.setdefault(j, [])
    rounds = math.floor(math.log((1 + eps) / delta) / math.log(1 + eps))
    raw = {j: 0.0 for j in range(len(pairs))}
    for r in range(1, rounds + 1):
        bound = min(1.0, delta * (1 + eps) ** r)
        for s in sorted(by_source):
            while True:
                dist, parent = sp.shortest_paths(s, wp)
                state.sp_calls += 1
                best = None
                for j, t in by_source[s]:
                    d = dist.get(t, math.inf)
                    if best is None or d < best[0]:
                        best = (d, j, t)
                d, j, t = best
                path = _extract_path(parent, s, t)
                if path is None:
                    break
                # the while condition uses the path's live length
                live = sum((wp[path[i]] + wp[path[i + 1]]) / 2.0
                           for i in range(len(path) - 1))
                if live >= bound:
                    break
                c_push = min(cap[v] for v in path)
                if c_push == math.inf:
                    raise UnboundedFlow(
                        f"uncapacitated path {path}: throughput is infinite")
                raw[j] += c_push
                _record(state, j, path, c_push)
                for v in path:
                    _bump_length(state, wp, v, c_push, cap[v])
    scale = math.log((1 + eps) / delta) / math.log(1 + eps)
    state.paths = {j: [(p, a / scale) for p, a in pl]
                   for j, pl in state.paths.items()}
    state.values = {j: raw[j] / scale for j in raw}
    return state


def max_concurrent(vg: VertexCapGraph, pairs, eps, beta_tilde=None,
                   sp_oracle=None, budget_factor=8) -> FlowState:
    """Fleischer's maximum concurrent flow.  beta_tilde must be a lower
    bound on the optimum (from beta_estimate); demands are rescaled so
    the optimum is >= 1, doubling them whenever the shortest-path budget
    is exhausted without the potential reaching 1."""
    if not 0 < eps < 1:
        raise BadEpsilon(f"eps={eps} outside (0, 1)")
    pairs = list(pairs)
    vg = vg.with_terminals(pairs)
    g, cap = vg.graph, vg.cap
    if beta_tilde is None:
        beta_tilde = beta_estimate(vg, pairs)
    sp = sp_oracle if sp_oracle is not None else ExactSP(g)
    finite = [v for v in g.vertices() if cap[v] != math.inf]
    m_eff = max(1, len(finite) + 2 * g.m)  # companion edge count
    delta = concurrent_delta(m_eff, eps)
    budget = math.ceil(
        budget_factor * (len(finite) + len(pairs))
        * math.log(max(m_eff, 2)) / eps ** 2)
    demand_scale = max(beta_tilde, 1e-300)
    doublings = 0
    while True:
        state = FlowState(eps, delta, sp.alpha, cap)
        state.demand_doublings = doublings
        wp = {v: (delta / cap[v] if cap[v] != math.inf else 0.0)
              for v in g.vertices()}
        state.lengths = wp
        raw = {j: 0.0 for j in range(len(pairs))}
        for j in raw:
            state.paths[j] = []

        def potential():
            return sum(cap[v] * wp[v] for v in finite)

        exhausted = False
        while potential() < 1.0 and not exhausted:
            for j, p in enumerate(pairs):
                d_rem = p.d * demand_scale
                while potential() < 1.0 and d_rem > 0:
                    if state.sp_calls >= budget:
                        exhausted = True
                        break
                    dist, parent = sp.shortest_paths(p.s, wp)
                    state.sp_calls += 1
                    path = _extract_path(parent, p.s, p.t)
                    if path is None:
                        raise PairDisconnected(f"pair ({p.s},{p.t})")
                    c_push = min(min(cap[v] for v in path), d_rem)
                    d_rem -= c_push
                    raw[j] += c_push
                    _record(state, j, path, c_push)
                    for v in path:
                        _bump_length(state, wp, v, c_push, cap[v])
                if exhausted:
                    break
        if exhausted:
            demand_scale *= 2.0
            doublings += 1
            if doublings > 64:
                raise UnboundedFlow(
                    "potential never reaches 1: demands route through "
                    "uncapacitated paths only")
            continue
        # lengths end at most (1+eps)/c(v), so this scale makes the
        # routed flow strictly feasible, not just asymptotically so
        scale = math.log((1.0 + eps) / delta) / math.log(1 + eps)
        state.paths = {j: [(pp, a / scale) for pp, a in pl]
                       for j, pl in state.paths.items()}
        state.values = {j: raw[j] / scale for j in raw}
        state.lam = min(state.values[j] / (p.d * demand_scale)
                        for j, p in enumerate(pairs)) * demand_scale
        return state


def beta_estimate(vg: VertexCapGraph, pairs) -> float:
    """Lower bound on the concurrent-flow optimum from capacity-level
    connectivity: the bottleneck of each pair is bracketed within a
    factor 2 by the highest level 2^i * c_min at which the pair is still
    connected; the k-commodity slack divides the minimum."""
    pairs = list(pairs)
    vg = vg.with_terminals(pairs)
    g, cap = vg.graph, vg.cap
    finite = [cap[v] for v in g.vertices() if cap[v] != math.inf]
    if not finite:
        return math.inf
    c_min = min(finite)
    c_max = max(finite)
    levels = max(1, math.ceil(math.log2(c_max / c_min)) + 1)
    best = math.inf
    for j, p in enumerate(pairs):
        z_hat = None
        for i in range(levels, -1, -1):
            keep = {v for v in g.vertices()
                    if cap[v] == math.inf or cap[v] >= (2 ** i) * c_min}
            if p.s in keep and p.t in keep and _connected(g, keep, p.s, p.t):
                z_hat = (2 ** i) * c_min
                break
        if z_hat is None:
            raise PairDisconnected(f"pair ({p.s},{p.t})")
        best = min(best, z_hat / p.d)
    return best / max(1, len(pairs))


def _connected(g: DynamicGraph, keep, s, t):
    adj = {v: set() for v in keep}
    for _, u, v, _ in g.edges():
        if u != v and u in keep and v in keep:
            adj[u].add(v)
            adj[v].add(u)
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        if u == t:
            return True
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def congestion_round(state: FlowState, rng):
    """Raghavan-Thompson rounding: one path per commodity sampled from
    its normalized decomposition.  Returns (paths, measured congestion
    max_v count(v)/c(v) over finite capacities)."""
    normalized = state.normalized_paths()
    chosen = {}
    for j in sorted(normalized):
        r = rng.random()
        acc = 0.0
        pick = normalized[j][-1][0]
        for path, prob in normalized[j]:
            acc += prob
            if r <= acc:
                pick = path
                break
        chosen[j] = pick
    congestion = 0.0
    for v, c in state.cap.items():
        if c == math.inf:
            continue
        load = sum(1 for path in chosen.values() if v in path)
        congestion = max(congestion, load / c)
    return chosen, congestion
