"""Static expander decompositions.

decompose_base partitions the vertex set by recursive spectral
partitioning: take the second eigenvector of the (padding-aware)
normalized Laplacian, split at the best sweep cut while the conductance
target is missed, and certify parts exactly (full cut enumeration,
<= 18 vertices) or by sweep-cut evidence.  The certified quantity is the
self-loop-padded conductance: cuts inside the part, volumes measured by
the degrees of the graph being decomposed.

decompose_edges recurses on crossing edges; decompose_uniform runs the
min-degree peeling loop and attaches degree-equalized companions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import RecursionBudgetExceeded, WeightedInput
from .expanders import ContractionMap, delta_reduce
from .graph import DynamicGraph

EXACT_CERT_CAP = 18


@dataclass
class Certificate:
    phi: float  # threshold the part is certified against
    value: float  # measured conductance (exact or sampled lower evidence)
    exact: bool
    witness: object = None

    @property
    def ok(self):
        return self.value >= self.phi


@dataclass
class VertexPartition:
    parts: list  # list of frozensets
    crossing: set  # EdgeIds with endpoints in different parts
    certificates: list  # Certificate per part


@dataclass
class EdgeDecomposition:
    clusters: list  # edge-disjoint DynamicGraphs (original ids)
    certificates: list
    rounds: int


@dataclass
class UniformCluster:
    graph: DynamicGraph
    companion: DynamicGraph
    cmap: ContractionMap
    certificate: Certificate
    level: int
    delta: int  # split parameter used for the companion
    initial_edges: int
    initial_min_degree: float


@dataclass
class UniformDecomposition:
    clusters: list = field(default_factory=list)


def padded_sweep_order(g: DynamicGraph, S, pad_deg):
    """Vertices of S ordered by the 2nd eigenvector of the normalized
    Laplacian of g{S} (padded degrees); ties by vertex id."""
    S = sorted(S)
    idx = {v: i for i, v in enumerate(S)}
    n = len(S)
    L = np.zeros((n, n))
    for _, u, v, w in g.edges():
        if u == v or u not in idx or v not in idx:
            continue
        i, j = idx[u], idx[v]
        L[i, i] += w
        L[j, j] += w
        L[i, j] -= w
        L[j, i] -= w
    d = np.array([max(pad_deg[v], 1e-12) for v in S], dtype=float)
    Dm = 1.0 / np.sqrt(d)
    N = L * Dm[:, None] * Dm[None, :]
    w_, U = scipy.linalg.eigh(N)
    x = U[:, 1] * Dm if n > 1 else np.zeros(1)
    return [v for _, v in sorted(zip(x, S), key=lambda p: (p[0], p[1]))]


def padded_cut_conductance(g: DynamicGraph, side, S, pad_deg):
    """phi_{g{S}} of the cut (side, S - side)."""
    side = set(side)
    cross = 0
    for _, u, v, w in g.edges():
        if u == v or u not in S or v not in S:
            continue
        if (u in side) != (v in side):
            cross += w
    volA = sum(pad_deg[v] for v in side)
    volB = sum(pad_deg[v] for v in S) - volA
    denom = min(volA, volB)
    if denom == 0:
        return math.inf
    return cross / denom


def best_sweep_cut(g: DynamicGraph, S, pad_deg):
    """(value, side) of the best sweep-prefix / singleton cut of g{S}."""
    S = set(S)
    order = padded_sweep_order(g, S, pad_deg)
    best_val, best_side = math.inf, None
    candidates = [set(order[:i]) for i in range(1, len(order))]
    candidates += [{v} for v in S]
    for side in candidates:
        val = padded_cut_conductance(g, side, S, pad_deg)
        if val < best_val:
            best_val, best_side = val, frozenset(side)
    return best_val, best_side


def certify_part(g: DynamicGraph, S, phi, pad_deg=None) -> Certificate:
    """Certificate for phi_{g{S}} >= phi (exact <= 18 vertices)."""
    S = set(S)
    if pad_deg is None:
        pad_deg = {v: g.degree(v) for v in S}
    if len(S) <= 1:
        return Certificate(phi, math.inf, True, None)
    if len(S) <= EXACT_CERT_CAP:
        val, wit = _exact_padded(g, sorted(S), pad_deg)
        return Certificate(phi, val, True, wit)
    val, wit = best_sweep_cut(g, S, pad_deg)
    return Certificate(phi, val, False, wit)


def _exact_padded(g: DynamicGraph, S, pad_deg):
    from fractions import Fraction

    from . import cutkernel

    idx = {v: i for i, v in enumerate(S)}
    n = len(S)
    us, vs, ws = [], [], []
    for _, u, v, w in g.edges():
        if u in idx and v in idx:
            us.append(idx[u])
            vs.append(idx[v])
            ws.append(w)
    unit = all(w == 1 for w in ws) and all(
        float(pad_deg[v]).is_integer() for v in S)
    if unit:
        cross = cutkernel.crossing_counts(n, us, vs)
        vol = cutkernel.subset_volumes_int(n, [int(pad_deg[v]) for v in S])
    else:
        cross = cutkernel.crossing_weights(n, us, vs, ws)
        vol = cutkernel.subset_volumes(n, [float(pad_deg[v]) for v in S])
    total = vol[-1] + pad_deg[S[-1]]  # full-set volume
    minvol = np.minimum(vol, total - vol)
    if not (minvol[1:] > 0).any():
        return math.inf, None
    ratio = np.where(minvol > 0, cross / np.where(minvol > 0, minvol, 1),
                     np.inf)
    s = 1 + int(np.argmin(ratio[1:]))
    if minvol[s] == 0:
        return math.inf, None
    wit = frozenset(S[i] for i in range(n - 1) if (s >> i) & 1)
    if unit:
        return Fraction(int(cross[s]), int(minvol[s])), wit
    return float(cross[s]) / float(minvol[s]), wit


def decompose_base(g: DynamicGraph, phi) -> VertexPartition:
    """Partition V(g) into parts with certified phi_{g{V_i}} >= phi."""
    if not 0 < phi <= 0.5:
        raise ValueError(f"phi={phi} outside (0, 1/2]")
    pad_deg = {v: g.degree(v) for v in g.vertices()}
    parts, certs = [], []

    def recurse(S):
        S = frozenset(S)
        if not S:
            return
        cert = certify_part(g, S, phi, pad_deg)
        if cert.ok or len(S) == 1:
            parts.append(S)
            certs.append(cert)
            return
        side = set(cert.witness)
        recurse(side)
        recurse(S - side)

    if g.n:
        recurse(g.vertex_set())
    part_of = {}
    for i, p in enumerate(parts):
        for v in p:
            part_of[v] = i
    crossing = {e for e, u, v, _ in g.edges() if part_of[u] != part_of[v]}
    return VertexPartition(parts, crossing, certs)


def phi_max(m):
    """Enforced upper bound on phi for recursive decompositions."""
    return 0.5 / max(1.0, math.log2(max(m, 2)) ** 0.5)


def decompose_edges(g: DynamicGraph, phi, max_rounds=None) -> EdgeDecomposition:
    """Recursively decompose until every edge sits in a certified cluster."""
    if max_rounds is None:
        max_rounds = int(math.ceil(math.log2(max(g.m, 2)))) + 4
    clusters, certs = [], []
    work = g
    rounds = 0
    while work.m:
        if rounds >= max_rounds:
            raise RecursionBudgetExceeded(
                f"{work.m} crossing edges left after {rounds} rounds")
        vp = decompose_base(work, phi)
        for part, cert in zip(vp.parts, vp.certificates):
            sub = work.induced_subgraph(part)
            if sub.m:
                clusters.append(sub)
                certs.append(cert)
        if vp.crossing:
            work = work.edge_subgraph(vp.crossing)
        else:
            work = DynamicGraph(0)
        rounds += 1
    return EdgeDecomposition(clusters, certs, rounds)


def decompose_uniform(g: DynamicGraph, phi, max_inner=None,
                      min_split_delta=9) -> UniformDecomposition:
    """Min-degree peeling decomposition with degree-equalized companions.

    Level k keeps only nodes of degree >= Delta/2^k (peeled edges move to
    level k+1), decomposes the remainder, emits certified clusters, and
    repeats on the crossing edges.  Every cluster gets a companion built
    by splitting with delta = max(9, ceil(min deg / phi)).
    """
    if not g.is_unweighted():
        raise WeightedInput("uniform decomposition expects unit weights")
    out = UniformDecomposition()
    if g.m == 0:
        return out
    Delta = g.max_degree()
    if max_inner is None:
        max_inner = int(math.ceil(math.log2(max(g.m, 2)))) + 4
    level = g.copy()
    k = 0
    while level.m:
        threshold = Delta / 2 ** k
        next_edges = []
        inner = 0
        while level.m:
            # peel low-degree nodes into the next level
            changed = True
            while changed:
                changed = False
                for v in level.vertices():
                    if 0 < level.degree(v) < threshold:
                        for eid, _, _ in level.snapshot_incident(v):
                            u, w_, wt = level._edges[eid]
                            next_edges.append((eid, u, w_, wt))
                            level._delete(eid)
                        changed = True
            if level.m == 0:
                break
            if inner >= max_inner:
                raise RecursionBudgetExceeded(
                    f"level {k}: {level.m} edges after {inner} passes")
            active = {v for v in level.vertices() if level.degree(v) > 0}
            snapshot = level.induced_subgraph(active)
            vp = decompose_base(snapshot, phi)
            for part, cert in zip(vp.parts, vp.certificates):
                sub = snapshot.induced_subgraph(part)
                if not sub.m:
                    continue
                mind = sub.min_degree()
                delta = max(min_split_delta, int(math.ceil(mind / phi)))
                companion, cmap = delta_reduce(sub, delta)
                out.clusters.append(UniformCluster(
                    sub, companion, cmap, cert, k, delta, sub.m, mind))
                for eid in sub.edge_ids():
                    level._delete(eid)
            inner += 1
        if not next_edges:
            break
        nxt = DynamicGraph(g.vertex_set())
        for eid, u, v, w in next_edges:
            nxt._insert(u, v, w, eid=eid)
        level = nxt
        k += 1
        if k > int(math.ceil(math.log2(max(Delta, 2)))) + max_inner:
            raise RecursionBudgetExceeded(f"level counter ran to {k}")
    return out
