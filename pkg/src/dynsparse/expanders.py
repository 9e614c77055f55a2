"""Explicit expanders and the degree-equalizing split/contract pair.

The base construction lives on Z_k x Z_k: every vertex (x, y) is adjacent
to (x +- 2y, y), (x +- (2y+1), y), (x, y +- 2x), (x, y +- (2x+1)) mod k.
Materializing one edge per vertex per "forward" rule (+2y, +(2y+1), +2x,
+(2x+1)) yields each undirected edge exactly once.  For n strictly between
(k-1)^2 and k^2 we contract disjoint vertex pairs down to n nodes, and the
final graph with degree parameter d is the union of t = floor(d/8) fresh
copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParameterTooSmall, UncoveredVertex, WeightedInput
from .graph import DynamicGraph


def margulis_graph(k: int) -> DynamicGraph:
    """The 8-neighbor-rule multigraph on Z_k x Z_k (k^2 vertices)."""
    if k < 2:
        raise ParameterTooSmall(f"k={k} < 2")
    n = k * k
    g = DynamicGraph(n)

    def vid(x, y):
        return (x % k) * k + (y % k)

    for x in range(k):
        for y in range(k):
            u = vid(x, y)
            for nx, ny in ((x + 2 * y, y), (x + 2 * y + 1, y),
                           (x, y + 2 * x), (x, y + 2 * x + 1)):
                g.insert_edge(u, vid(nx, ny))
    return g


def margulis_neighbors(x, y, k):
    """The full 8-entry neighbor multiset of (x, y) under the rule."""
    out = []
    for nx, ny in ((x + 2 * y, y), (x - 2 * y, y),
                   (x + 2 * y + 1, y), (x - (2 * y + 1), y),
                   (x, y + 2 * x), (x, y - 2 * x),
                   (x, y + 2 * x + 1), (x, y - (2 * x + 1))):
        out.append((nx % k, ny % k))
    return out


def build_explicit_expander(n: int, d: int) -> DynamicGraph:
    """H_{n,d}: n vertices, every degree in [d-8, 2d]."""
    if n < 10:
        raise ParameterTooSmall(f"n={n} < 10")
    if d < 9:
        raise ParameterTooSmall(f"d={d} < 9")
    k = 1
    while k * k < n:
        k += 1
    base = margulis_graph(k)  # k^2 >= n > (k-1)^2
    # contract k^2 - n disjoint vertex pairs, lowest ids first
    excess = k * k - n
    merged = {}  # victim -> survivor
    for i in range(excess):
        merged[2 * i + 1] = 2 * i
    relabel = {}
    nxt = 0
    for v in range(k * k):
        if v in merged:
            continue
        relabel[v] = nxt
        nxt += 1
    for victim, survivor in merged.items():
        relabel[victim] = relabel[survivor]
    t = d // 8
    g = DynamicGraph(n)
    for _ in range(t):
        for _, u, v, w in base.edges():
            g.insert_edge(relabel[u], relabel[v], w)
    return g


def circulant_graph(n: int, offsets, copies: int = 1) -> DynamicGraph:
    """Circulant graph C_n(offsets), each unordered pair once per copy.
    copies > 1 yields a near-regular multigraph (useful when a degree
    above n-1 is wanted on few vertices)."""
    if n < 3:
        raise ParameterTooSmall(f"n={n} < 3")
    pairs = set()
    for u in range(n):
        for o in offsets:
            v = (u + o) % n
            if u != v:
                pairs.add((min(u, v), max(u, v)))
    g = DynamicGraph(n)
    for _ in range(copies):
        for u, v in sorted(pairs):
            g.insert_edge(u, v)
    return g


@dataclass
class ContractionMap:
    """Bookkeeping for a degree split: u -> ordered super-node vertices,
    original edge -> (group index at u, group index at v), plus the ids of
    the internal expander edges and the image of every original edge."""

    super_nodes: dict  # original vertex -> list of new vertex ids
    edge_groups: dict  # original eid -> (i, j)
    image_edges: dict = field(default_factory=dict)  # original eid -> new eid
    internal_edges: set = field(default_factory=set)  # new eids

    def owner(self):
        """new vertex id -> original vertex id."""
        out = {}
        for u, xs in self.super_nodes.items():
            for x in xs:
                out[x] = u
        return out

    def identity(self):
        return all(len(xs) == 1 for xs in self.super_nodes.values())


def delta_reduce(g: DynamicGraph, delta: int):
    """Split every vertex with deg >= 10*delta into an explicit expander
    of ceil(deg/delta) nodes; incident edges are grouped by ascending
    EdgeId into chunks of delta, group i attaching to the i-th super-node
    vertex.  Returns (new graph, ContractionMap)."""
    if delta < 9:
        raise ParameterTooSmall(f"delta={delta} < 9")
    if not g.is_unweighted():
        raise WeightedInput("delta reduction is defined on unweighted input")
    super_nodes = {}
    edge_groups = {}
    nxt = 0
    group_of = {}  # (vertex, eid) -> group index
    for u in g.vertices():
        inc = g.snapshot_incident(u)
        deg = len(inc)  # unweighted: slots = incident edge count
        if deg >= 10 * delta:
            parts = -(-deg // delta)
            super_nodes[u] = list(range(nxt, nxt + parts))
            nxt += parts
            for pos, (eid, _, _) in enumerate(inc):
                group_of[(u, eid)] = pos // delta
        else:
            super_nodes[u] = [nxt]
            nxt += 1
            for eid, _, _ in inc:
                group_of[(u, eid)] = 0
    h = DynamicGraph(nxt)
    cmap = ContractionMap(super_nodes, edge_groups)
    # internal expanders for split vertices
    for u in g.vertices():
        xs = super_nodes[u]
        if len(xs) == 1:
            continue
        inner = build_explicit_expander(len(xs), delta)
        for _, a, b, _ in inner.edges():
            cmap.internal_edges.add(h.insert_edge(xs[a], xs[b]))
    # images of the original edges
    for eid, u, v, _ in g.edges():
        i = group_of[(u, eid)]
        j = group_of[(v, eid)]
        edge_groups[eid] = (i, j)
        cmap.image_edges[eid] = h.insert_edge(super_nodes[u][i],
                                              super_nodes[v][j])
    return h, cmap


def contract(h: DynamicGraph, cmap: ContractionMap) -> DynamicGraph:
    """Collapse every super-node back to its original vertex.  Multi-edges
    are preserved; edges inside one super-node become self-loops."""
    owner = cmap.owner()
    if not h.vertex_set() <= set(owner):
        raise UncoveredVertex(f"vertices {h.vertex_set() - set(owner)}")
    g = DynamicGraph(set(cmap.super_nodes))
    for eid, u, v, w in h.edges():
        g._insert(owner[u], owner[v], w, eid=eid)
    return g


def identity_contraction(g: DynamicGraph) -> ContractionMap:
    return ContractionMap({v: [v] for v in g.vertices()},
                          {e: (0, 0) for e in g.edge_ids()},
                          {e: e for e in g.edge_ids()}, set())
