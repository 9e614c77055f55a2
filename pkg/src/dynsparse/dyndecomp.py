"""Fully dynamic expander decomposition via power-of-two edge buckets.

Bucket i may hold at most 2^i edges, organized as certified expander
clusters.  Insertions enter bucket 1 and cascade upward on overflow
(an overfull bucket is emptied into the next one, to fixpoint); the
receiving bucket is re-decomposed.  Deletions are routed to the owning
cluster and answered by pruning; pruned edges re-enter bucket 1.  The
uniform variant keeps a degree-equalized companion per cluster and
rebuilds a cluster once deletions exceed phi times its creation size.

Consumers see a delta stream per update: clusters added, clusters
removed, and in-cluster edge deletions — each cluster only ever shrinks
between creation and destruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .decomp import decompose_edges, decompose_uniform, phi_max
from .errors import DeletionBudgetExceeded, UnknownEdge
from .graph import DELETE, INSERT, BATCH_DELETE, DynamicGraph, UpdateEvent


@dataclass
class Cluster:
    cid: int
    bucket: int
    graph: DynamicGraph
    certificate: object
    companion: DynamicGraph = None
    cmap: object = None
    creation_edges: int = 0  # K_{i,j}
    deletions: int = 0
    events: list = field(default_factory=list)  # ("create"|"delete", payload)


@dataclass
class DecompositionDelta:
    added: list = field(default_factory=list)  # cluster ids
    removed: list = field(default_factory=list)  # cluster ids
    deleted_in: list = field(default_factory=list)  # (cluster id, eid)


class BucketDecomposition:
    """State for dd_init / dd_update."""

    def __init__(self, g: DynamicGraph, phi, uniform=False):
        self.g = g.copy()
        self.phi = phi
        self.uniform = uniform
        self.buckets = {}  # level -> set of cluster ids
        self.clusters = {}  # cid -> Cluster
        self.owner = {}  # eid -> cid
        self._next_cid = 0

    # -- bookkeeping -------------------------------------------------------

    def bucket_edge_count(self, level):
        return sum(self.clusters[c].graph.m
                   for c in self.buckets.get(level, ()))

    def _new_cluster(self, level, graph, cert, companion=None, cmap=None):
        cid = self._next_cid
        self._next_cid += 1
        cl = Cluster(cid, level, graph, cert, companion, cmap,
                     creation_edges=graph.m)
        cl.events.append(("create", graph.m))
        self.clusters[cid] = cl
        self.buckets.setdefault(level, set()).add(cid)
        for eid in graph.edge_ids():
            self.owner[eid] = cid
        return cid

    def _destroy_cluster(self, cid):
        cl = self.clusters.pop(cid)
        self.buckets[cl.bucket].discard(cid)
        for eid in cl.graph.edge_ids():
            if self.owner.get(eid) == cid:
                del self.owner[eid]
        return cl

    def _decompose_into(self, level, edges, delta):
        """Decompose the edge list [(eid, u, v, w)] into clusters at level."""
        if not edges:
            return
        sub = DynamicGraph({u for _, u, v, _ in edges}
                           | {v for _, u, v, _ in edges})
        for eid, u, v, w in edges:
            sub._insert(u, v, w, eid=eid)
        if self.uniform:
            ud = decompose_uniform(sub, self.phi)
            for uc in ud.clusters:
                delta.added.append(self._new_cluster(
                    level, uc.graph, uc.certificate, uc.companion, uc.cmap))
        else:
            ed = decompose_edges(sub, self.phi)
            for graph, cert in zip(ed.clusters, ed.certificates):
                delta.added.append(self._new_cluster(level, graph, cert))

    def _cascade_insert(self, incoming, delta):
        """Push the edge list into bucket 1, cascading on overflow."""
        level = 1
        while True:
            cap = 2 ** level
            have = self.bucket_edge_count(level)
            if have + len(incoming) <= cap:
                break
            for cid in sorted(self.buckets.get(level, set())):
                cl = self._destroy_cluster(cid)
                delta.removed.append(cid)
                incoming.extend(cl.graph.edges())
            level += 1
        # re-decompose the whole destination bucket with the new edges
        for cid in sorted(self.buckets.get(level, set())):
            cl = self._destroy_cluster(cid)
            delta.removed.append(cid)
            incoming.extend(cl.graph.edges())
        self._decompose_into(level, incoming, delta)

    # -- deletions ---------------------------------------------------------

    def _delete_edge(self, eid, delta):
        if eid not in self.owner:
            raise UnknownEdge(f"edge {eid}")
        cid = self.owner.pop(eid)
        cl = self.clusters[cid]
        cl.graph._delete(eid)
        cl.deletions += 1
        cl.events.append(("delete", eid))
        delta.deleted_in.append((cid, eid))
        if self.uniform and cl.cmap is not None:
            image = cl.cmap.image_edges.get(eid)
            if image is not None and cl.companion.has_edge(image):
                cl.companion._delete(image)
        rebuild = cl.graph.m == 0
        if self.uniform and cl.deletions > self.phi * cl.creation_edges:
            rebuild = True
        pruned_edges = []
        if rebuild:
            self._destroy_cluster(cid)
            delta.removed.append(cid)
            pruned_edges = cl.graph.edges()
        else:
            pruned_edges = self._prune_cluster(cl, delta)
        return pruned_edges

    def _prune_cluster(self, cl, delta):
        """Trim the cluster back to a certified expander; evicted edges are
        returned for reinsertion."""
        from .decomp import certify_part
        from .pruning import trim

        g = cl.graph
        before = set(g.edge_ids())
        trim(g, self.phi / 6)
        evicted = before - set(g.edge_ids())
        out = []
        for eid in sorted(evicted):
            cid = self.owner.pop(eid, None)
            u, v, w = self.g._edges[eid]
            out.append((eid, u, v, w))
            cl.events.append(("evict", eid))
            delta.deleted_in.append((cl.cid, eid))
            if self.uniform and cl.cmap is not None:
                image = cl.cmap.image_edges.get(eid)
                if image is not None and cl.companion.has_edge(image):
                    cl.companion._delete(image)
        if g.m == 0:
            self._destroy_cluster(cl.cid)
            delta.removed.append(cl.cid)
        else:
            live = {v for v in g.vertices() if g.degree(v) > 0}
            cl.certificate = certify_part(
                g, live, self.phi / 6,
                pad_deg={v: g.degree(v) for v in live})
        return out

    # -- integrity ---------------------------------------------------------

    def edge_multiset(self):
        out = {}
        for cl in self.clusters.values():
            for k, c in cl.graph.edge_multiset().items():
                out[k] = out.get(k, 0) + c
        return out

    def check_conservation(self):
        return self.edge_multiset() == self.g.edge_multiset()


def dd_init(g: DynamicGraph, phi, uniform=False) -> BucketDecomposition:
    """All edges enter the single bucket ceil(log2 m), decomposed there."""
    if phi > phi_max(max(g.m, 2)):
        raise ValueError(f"phi={phi} exceeds phi_max={phi_max(max(g.m, 2))}")
    state = BucketDecomposition(g, phi, uniform)
    if g.m:
        top = max(1, math.ceil(math.log2(g.m)))
        delta = DecompositionDelta()
        state._decompose_into(top, g.edges(), delta)
    return state


def dd_update(state: BucketDecomposition, ev: UpdateEvent) -> DecompositionDelta:
    delta = DecompositionDelta()
    if ev.kind == INSERT:
        eid = state.g._insert(ev.u, ev.v, ev.w, ev.eid)
        state._cascade_insert([(eid, ev.u, ev.v, ev.w)], delta)
    elif ev.kind in (DELETE, BATCH_DELETE):
        eids = [ev.eid] if ev.kind == DELETE else list(ev.eids)
        reinsert = []
        for eid in eids:
            if not state.g.has_edge(eid):
                raise UnknownEdge(f"edge {eid}")
            state.g._delete(eid)
            reinsert.extend(state._delete_edge(eid, delta))
        if reinsert:
            state._cascade_insert(reinsert, delta)
    else:
        raise ValueError(f"unknown update kind {ev.kind!r}")
    return delta
