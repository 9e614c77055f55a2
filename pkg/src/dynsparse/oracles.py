"""Brute-force verification oracles.

Everything here is ground truth: exhaustive cut enumeration (n <= 20),
exact APSP stretch, dense generalized-eigenvalue pencils (n <= 256), and
augmenting-path max flow.  Cut arithmetic is exact (integer counts /
Fractions on unweighted inputs); eigen checks use floats with a 1e-9
tolerance on the pencil extremes.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from . import cutkernel
from .errors import KernelMismatch, NotSubgraph, TooLarge
from .graph import DynamicGraph

EXACT_CUT_CAP = 20  # hard cap for 2**(n-1) cut enumeration
EXACT_EIG_CAP = 256  # dense pencil solves
EIG_TOL = 1e-9


@dataclass
class VerificationReport:
    kind: str
    ok: bool
    min_ratio: float = math.nan
    max_ratio: float = math.nan
    witness_min: object = None
    witness_max: object = None
    mode: str = "exact"
    details: dict = field(default_factory=dict)

    def to_obj(self):
        def _num(x):
            if isinstance(x, Fraction):
                return float(x)
            return x

        return {
            "kind": self.kind,
            "ok": bool(self.ok),
            "min_ratio": _num(self.min_ratio),
            "max_ratio": _num(self.max_ratio),
            "witness_min": sorted(self.witness_min) if isinstance(self.witness_min, (set, frozenset)) else self.witness_min,
            "witness_max": sorted(self.witness_max) if isinstance(self.witness_max, (set, frozenset)) else self.witness_max,
            "mode": self.mode,
            "details": {k: _num(v) for k, v in self.details.items()},
        }


def _cut_side(s, vs):
    """Vertex set encoded by cut index s over sorted vertex list vs."""
    return frozenset(vs[i] for i in range(len(vs) - 1) if (s >> i) & 1)


def cut_arrays(g: DynamicGraph):
    """(crossing, side_volume, total_volume, sorted vertices).

    Integer arrays when g is unweighted, float otherwise.
    """
    idx, vs = g.dense_index()
    n = len(vs)
    us, vv, ws = g.edge_arrays()
    if g.is_unweighted():
        cross = cutkernel.crossing_counts(n, us, vv)
        deg = [int(g.degree(v)) for v in vs]
        vol = cutkernel.subset_volumes_int(n, deg)
        total = sum(deg)
    else:
        cross = cutkernel.crossing_weights(n, us, vv, ws)
        deg = [float(g.degree(v)) for v in vs]
        vol = cutkernel.subset_volumes(n, deg)
        total = float(sum(deg))
    return cross, vol, total, vs


def exact_conductance(g: DynamicGraph, cap=EXACT_CUT_CAP):
    """Exact conductance (Fraction for unweighted inputs) and witness cut.

    Returns (math.inf, None) for graphs with < 2 vertices or no proper cut
    mass.  Disconnected graphs report 0 with a component witness.
    """
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices > cap {cap}")
    if g.n < 2 or g.m == 0:
        return math.inf, None
    cross, vol, total, vs = cut_arrays(g)
    minvol = np.minimum(vol, total - vol)
    exact = g.is_unweighted()
    best_val, best_s = None, None
    ncuts = len(cross)
    # disconnected (or zero-volume side): any proper cut with no crossing
    zero = np.flatnonzero(cross[1:] == 0)
    if len(zero):
        s = int(zero[0]) + 1
        return (Fraction(0) if exact else 0.0), _cut_side(s, vs)
    with np.errstate(divide="ignore"):
        ratio = cross / np.where(minvol > 0, minvol, 1)
    s = 1 + int(np.argmin(ratio[1:]))
    if exact:
        best_val = Fraction(int(cross[s]), int(minvol[s]))
    else:
        best_val = float(ratio[s])
    best_s = _cut_side(s, vs)
    return best_val, best_s


def conductance_of_cut(g: DynamicGraph, side):
    """phi_G(side) = crossing weight / min(vol side, vol rest)."""
    side = set(side)
    cross = 0
    for _, u, v, w in g.edges():
        if u == v:
            continue
        if (u in side) != (v in side):
            cross += w
    volS = g.volume(side)
    volR = g.volume() - volS
    denom = min(volS, volR)
    if denom == 0:
        return math.inf if cross == 0 else math.inf
    if isinstance(cross, int) and isinstance(denom, int):
        return Fraction(cross, denom)
    return cross / denom


def exact_padded_conductance(parent: DynamicGraph, S, cap=EXACT_CUT_CAP):
    """Conductance of parent{S}: cuts within S, volumes padded to parent
    degrees (self-loops added so every vertex keeps its parent degree).

    Returns (value, witness subset of S)."""
    S = sorted(set(S))
    n = len(S)
    if n > cap:
        raise TooLarge(f"{n} vertices > cap {cap}")
    if n < 2:
        return math.inf, None
    idx = {v: i for i, v in enumerate(S)}
    inS = set(S)
    us, vv = [], []
    unweighted = parent.is_unweighted()
    for _, u, v, w in parent.edges():
        if u in inS and v in inS:
            us.append(idx[u])
            vv.append(idx[v])
    deg = [parent.degree(v) for v in S]
    if not unweighted:
        raise TooLarge("padded certification implemented for unweighted only")
    cross = cutkernel.crossing_counts(n, us, vv)
    vol = cutkernel.subset_volumes_int(n, [int(d) for d in deg])
    total = int(sum(deg))
    minvol = np.minimum(vol, total - vol)
    zero_vol = np.flatnonzero((minvol[1:] == 0))
    # padded graphs have positive degree everywhere they had parent degree;
    # a zero-volume side can only mean isolated-in-parent vertices
    zero = np.flatnonzero((cross[1:] == 0) & (minvol[1:] > 0))
    if len(zero):
        s = int(zero[0]) + 1
        return Fraction(0), frozenset(S[i] for i in range(n - 1) if (s >> i) & 1)
    if len(zero_vol) == len(cross) - 1:
        return math.inf, None
    with np.errstate(divide="ignore"):
        ratio = np.where(minvol > 0, cross / np.where(minvol > 0, minvol, 1), np.inf)
    s = 1 + int(np.argmin(ratio[1:]))
    if minvol[s] == 0:
        return math.inf, None
    val = Fraction(int(cross[s]), int(minvol[s]))
    return val, frozenset(S[i] for i in range(n - 1) if (s >> i) & 1)


def sampled_cuts(g: DynamicGraph, rng, extra=64):
    """Cut family for graphs too large to enumerate: every singleton,
    degree-sorted sweep prefixes, Fiedler sweep prefixes, random subsets."""
    vs = g.vertices()
    cuts = [frozenset([v]) for v in vs]
    by_deg = sorted(vs, key=lambda v: (g.degree(v), v))
    for i in range(1, len(vs)):
        cuts.append(frozenset(by_deg[:i]))
    try:
        order = fiedler_order(g)
        for i in range(1, len(vs)):
            cuts.append(frozenset(order[:i]))
    except Exception:
        pass
    for _ in range(extra):
        k = int(rng.integers(1, len(vs)))
        cuts.append(frozenset(rng.choice(vs, size=k, replace=False).tolist()))
    return cuts


def fiedler_order(g: DynamicGraph):
    """Vertices sorted by the 2nd eigenvector of the normalized Laplacian;
    ties broken by vertex id."""
    idx, vs = g.dense_index()
    n = len(vs)
    L = laplacian_matrix(g, vs)
    d = np.array([max(g.degree(v), 1e-12) for v in vs], dtype=float)
    Dm = 1.0 / np.sqrt(d)
    N = L * Dm[:, None] * Dm[None, :]
    w, U = scipy.linalg.eigh(N)
    x = U[:, 1] * Dm  # D^{-1/2} y: the sweep embedding
    return [v for _, v in sorted(zip(x, vs), key=lambda p: (p[0], p[1]))]


def laplacian_matrix(g: DynamicGraph, vs=None):
    if vs is None:
        vs = g.vertices()
    idx = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    L = np.zeros((n, n))
    for _, u, v, w in g.edges():
        if u == v:
            continue
        i, j = idx[u], idx[v]
        L[i, i] += w
        L[j, j] += w
        L[i, j] -= w
        L[j, i] -= w
    return L


def verify_cut_membership(g: DynamicGraph, h: DynamicGraph, lo=None, hi=None,
                          eps=None, rng=None, force_exact=False):
    """min/max over cuts of w_h(cut)/w_g(cut), with witnesses.

    Bounds: either eps (ratios must sit in [e^-eps, e^eps]) or explicit
    (lo, hi).  Exact enumeration when |V| <= 20, sampled-cut mode beyond.
    """
    if eps is not None:
        lo, hi = math.exp(-eps), math.exp(eps)
    tol = 1e-9
    if g.n <= EXACT_CUT_CAP:
        cross_g, _, _, vs = cut_arrays(g)
        # h is evaluated over g's vertex set so cut indices align
        h_al = _align(h, g)
        cross_h, _, _, _ = cut_arrays(h_al)
        mode = "exact"
        min_r, max_r = math.inf, -math.inf
        wmin = wmax = None
        viol = 0
        for s in range(1, len(cross_g)):
            cg, ch = float(cross_g[s]), float(cross_h[s])
            if cg == 0:
                if ch > 0:
                    max_r, wmax, viol = math.inf, _cut_side(s, vs), viol + 1
                continue
            r = ch / cg
            if r < min_r:
                min_r, wmin = r, _cut_side(s, vs)
            if r > max_r:
                max_r, wmax = r, _cut_side(s, vs)
        ok = True
        if lo is not None and min_r < lo - tol:
            ok = False
        if hi is not None and max_r > hi + tol:
            ok = False
        if viol:
            ok = False
        return VerificationReport("cut", ok, min_r, max_r, wmin, wmax, mode,
                                  {"lo": lo, "hi": hi, "cuts": len(cross_g) - 1})
    if force_exact:
        raise TooLarge(f"{g.n} vertices > cap {EXACT_CUT_CAP}")
    rng = rng if rng is not None else np.random.default_rng(0)
    cuts = sampled_cuts(g, rng)
    min_r, max_r = math.inf, -math.inf
    wmin = wmax = None
    ok = True
    for side in cuts:
        cg = _crossing(g, side)
        ch = _crossing(h, side)
        if cg == 0:
            if ch > 0:
                ok, max_r, wmax = False, math.inf, side
            continue
        r = ch / cg
        if r < min_r:
            min_r, wmin = r, side
        if r > max_r:
            max_r, wmax = r, side
    if lo is not None and min_r < lo - tol:
        ok = False
    if hi is not None and max_r > hi + tol:
        ok = False
    return VerificationReport("cut", ok, min_r, max_r, wmin, wmax, "sampled",
                              {"lo": lo, "hi": hi, "cuts": len(cuts)})


def _crossing(g: DynamicGraph, side):
    side = set(side)
    tot = 0
    for _, u, v, w in g.edges():
        if u != v and ((u in side) != (v in side)):
            tot += w
    return tot


def _align(h: DynamicGraph, g: DynamicGraph) -> DynamicGraph:
    """Copy of h over g's vertex set (h's vertices must be a subset)."""
    if h.vertex_set() == g.vertex_set():
        return h
    if not h.vertex_set() <= g.vertex_set():
        raise KernelMismatch("h has vertices outside g")
    out = DynamicGraph(g.vertex_set())
    for e, u, v, w in h.edges():
        out._insert(u, v, w, eid=e)
    return out


def _hop_adjacency(g: DynamicGraph):
    adj = {v: set() for v in g.vertices()}
    for _, u, v, _ in g.edges():
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def _bfs_from(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def bfs_distances(g: DynamicGraph, src):
    dist = {src: 0}
    q = deque([src])
    adj = _hop_adjacency(g)
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def verify_spanner(g: DynamicGraph, h: DynamicGraph, t=None):
    """Max over connected pairs of dist_h/dist_g (hop metric).

    h must be a subgraph of g (edge endpoints only; weights ignored)."""
    g_pairs = {frozenset((u, v)) for _, u, v, _ in g.edges() if u != v}
    for _, u, v, _ in h.edges():
        if u != v and frozenset((u, v)) not in g_pairs:
            raise NotSubgraph(f"edge ({u},{v}) not in base graph")
        if not g.has_vertex(u) or not g.has_vertex(v):
            raise NotSubgraph(f"vertex outside base graph")
    h_al = _align(h, g)
    adj_g = _hop_adjacency(g)
    adj_h = _hop_adjacency(h_al)
    worst = 0.0
    witness = None
    infinite = False
    for src in g.vertices():
        dg = _bfs_from(adj_g, src)
        dh = _bfs_from(adj_h, src)
        for v, d in dg.items():
            if v == src or d == 0:
                continue
            if v not in dh:
                infinite = True
                witness = (src, v)
                continue
            r = dh[v] / d
            if r > worst:
                worst, witness = r, (src, v)
    if infinite:
        return VerificationReport("spanner", False, 1.0, math.inf,
                                  None, witness, "exact", {"t": t})
    ok = True if t is None else worst <= t + 1e-9
    return VerificationReport("spanner", ok, 1.0, worst, None, witness,
                              "exact", {"t": t})


def _components(g: DynamicGraph):
    parent = {v: v for v in g.vertices()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, u, v, _ in g.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return sorted(frozenset(s) for s in groups.values())


def verify_spectral(g: DynamicGraph, h: DynamicGraph, eps=None, lo=None, hi=None):
    """Extreme generalized eigenvalues of the pencil (L_h, L_g) on the
    complement of g's Laplacian kernel."""
    if g.n > EXACT_EIG_CAP:
        raise TooLarge(f"{g.n} vertices > cap {EXACT_EIG_CAP}")
    if eps is not None:
        lo, hi = math.exp(-eps), math.exp(eps)
    h_al = _align(h, g)
    comp_g = _components(g)
    # h may only refine g's components (valid, failing sample); it must
    # never connect two g-components
    gi = {}
    for i, c in enumerate(comp_g):
        for v in c:
            gi[v] = i
    for _, u, v, _ in h_al.edges():
        if gi[u] != gi[v]:
            raise KernelMismatch("h connects distinct components of g")
    vs = g.vertices()
    Lg = laplacian_matrix(g, vs)
    Lh = laplacian_matrix(h_al, vs)
    w, U = scipy.linalg.eigh(Lg)
    keep = w > EIG_TOL * max(1.0, float(w[-1]))
    if not keep.any():
        # g has no edges: pencil is empty, ratios vacuously 1
        return VerificationReport("spectral", True, 1.0, 1.0, None, None,
                                  "exact", {"lo": lo, "hi": hi, "dim": 0})
    Q = U[:, keep]
    d = w[keep]
    A = Q.T @ Lh @ Q
    Dm = 1.0 / np.sqrt(d)
    M = A * Dm[:, None] * Dm[None, :]
    ev = scipy.linalg.eigvalsh((M + M.T) / 2)
    lam_min, lam_max = float(ev[0]), float(ev[-1])
    tol = EIG_TOL * max(1.0, abs(lam_max))
    ok = True
    if lo is not None and lam_min < lo - tol:
        ok = False
    if hi is not None and lam_max > hi + tol:
        ok = False
    return VerificationReport("spectral", ok, lam_min, lam_max, None, None,
                              "exact", {"lo": lo, "hi": hi, "dim": int(keep.sum())})


# -- max flow oracle ---------------------------------------------------


def max_flow_exact(cap, s, t):
    """Edmonds-Karp max flow on a directed capacity map {u: {v: cap}}.

    Returns (value, flow map {u: {v: flow}}).  math.inf capacities allowed.
    """
    residual = {}

    def add(u, v, c):
        residual.setdefault(u, {}).setdefault(v, 0)
        residual.setdefault(v, {}).setdefault(u, 0)
        residual[u][v] += c

    for u, nbrs in cap.items():
        for v, c in nbrs.items():
            add(u, v, c)
    value = 0
    while True:
        # BFS for shortest augmenting path
        prev = {s: None}
        q = deque([s])
        while q and t not in prev:
            u = q.popleft()
            for v, c in residual.get(u, {}).items():
                if c > 1e-12 and v not in prev:
                    prev[v] = u
                    q.append(v)
        if t not in prev:
            break
        bottleneck = math.inf
        v = t
        while prev[v] is not None:
            u = prev[v]
            bottleneck = min(bottleneck, residual[u][v])
            v = u
        v = t
        while prev[v] is not None:
            u = prev[v]
            residual[u][v] -= bottleneck
            residual[v][u] += bottleneck
            v = u
        value += bottleneck
    flow = {}
    for u, nbrs in cap.items():
        for v, c in nbrs.items():
            f = residual.get(v, {}).get(u, 0)
            # residual[v][u] accumulates flow pushed u->v (minus any
            # reverse capacity, which plain digraph inputs don't have)
            sent = max(0, min(c, f))
            if sent > 1e-12:
                flow.setdefault(u, {})[v] = sent
    return value, flow


def max_flow_scaling(cap, s, t):
    """Independent second implementation (DFS with capacity scaling)."""
    residual = {}

    def add(u, v, c):
        residual.setdefault(u, {}).setdefault(v, 0)
        residual.setdefault(v, {}).setdefault(u, 0)
        residual[u][v] += c

    finite = [c for nbrs in cap.values() for c in nbrs.values() if c != math.inf]
    big = 2 * (sum(finite) + 1)
    for u, nbrs in cap.items():
        for v, c in nbrs.items():
            add(u, v, big if c == math.inf else c)
    value = 0
    delta = 2 ** int(math.floor(math.log2(max(1, big))))
    while delta >= 1e-9:
        while True:
            seen = {s}
            path = []

            def dfs(u):
                if u == t:
                    return True
                for v, c in residual.get(u, {}).items():
                    if c >= delta and v not in seen:
                        seen.add(v)
                        path.append((u, v))
                        if dfs(v):
                            return True
                        path.pop()
                return False

            if not dfs(s):
                break
            bottleneck = min(residual[u][v] for u, v in path)
            for u, v in path:
                residual[u][v] -= bottleneck
                residual[v][u] += bottleneck
            value += bottleneck
        delta /= 2
        if delta < 1:
            break
    return value
