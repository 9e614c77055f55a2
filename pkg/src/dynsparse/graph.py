"""Dynamic weighted multigraph with stable edge ids and an update log.

Conventions (fixed for the whole toolkit):
  * self-loops contribute their full weight once to the endpoint's degree
    and volume, and never to any cut weight;
  * the canonical edge order everywhere (sampling universes, grouping,
    round-robin neighbor lists) is ascending EdgeId;
  * edge ids are never reused within one graph lifetime.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonPositiveWeight, UnknownEdge, UnknownVertex

INSERT = "insert"
DELETE = "delete"
BATCH_DELETE = "batch_delete"


@dataclass(frozen=True)
class UpdateEvent:
    kind: str
    stage: int = -1  # assigned by the graph when applied
    u: int | None = None
    v: int | None = None
    w: float = 1
    eid: int | None = None
    eids: tuple = ()

    @staticmethod
    def insert(u, v, w=1):
        return UpdateEvent(INSERT, u=u, v=v, w=w)

    @staticmethod
    def delete(eid):
        return UpdateEvent(DELETE, eid=eid)

    @staticmethod
    def batch_delete(eids):
        return UpdateEvent(BATCH_DELETE, eids=tuple(eids))


@dataclass
class ChangeSet:
    inserted: list = field(default_factory=list)  # (eid, u, v, w)
    deleted: list = field(default_factory=list)  # eid
    reweighted: list = field(default_factory=list)  # (eid, new_w)

    def __len__(self):
        return len(self.inserted) + len(self.deleted) + len(self.reweighted)


class DynamicGraph:
    """Weighted multigraph over an explicit vertex set.

    Vertex ids are arbitrary hashable ints (subgraphs keep the parent's
    ids); edge ids are allocated by this graph unless given explicitly.
    """

    def __init__(self, vertices=0):
        if isinstance(vertices, int):
            vertices = range(vertices)
        self._vertices = set(vertices)
        self._edges = {}  # eid -> (u, v, w)
        self._inc = {v: set() for v in self._vertices}  # v -> set of eids
        self._deg = {v: 0 for v in self._vertices}
        self._next_eid = 0
        self._stage = 0
        self.log = []

    # -- basic accessors -------------------------------------------------

    @property
    def n(self):
        return len(self._vertices)

    @property
    def m(self):
        return len(self._edges)

    def vertices(self):
        return sorted(self._vertices)

    def vertex_set(self):
        return frozenset(self._vertices)

    def has_vertex(self, v):
        return v in self._vertices

    def edge_ids(self):
        return sorted(self._edges)

    def edges(self):
        """[(eid, u, v, w)] ascending eid."""
        return [(e, *self._edges[e]) for e in sorted(self._edges)]

    def has_edge(self, eid):
        return eid in self._edges

    def endpoints(self, eid):
        try:
            u, v, _ = self._edges[eid]
        except KeyError:
            raise UnknownEdge(f"edge {eid}") from None
        return u, v

    def weight(self, eid):
        try:
            return self._edges[eid][2]
        except KeyError:
            raise UnknownEdge(f"edge {eid}") from None

    def degree(self, v):
        try:
            return self._deg[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v}") from None

    def volume(self, vs=None):
        if vs is None:
            vs = self._vertices
        return sum(self._deg[v] for v in vs)

    def min_degree(self):
        return min(self._deg.values()) if self._deg else 0

    def max_degree(self):
        return max(self._deg.values()) if self._deg else 0

    def snapshot_incident(self, v):
        """Incident edges of v as [(eid, neighbor, w)], ascending eid.

        A self-loop appears once, with neighbor == v.
        """
        if v not in self._vertices:
            raise UnknownVertex(f"vertex {v}")
        out = []
        for e in sorted(self._inc[v]):
            u, w_, wt = self._edges[e]
            out.append((e, w_ if u == v else u, wt))
        return out

    def neighbors(self, v):
        """Distinct neighbors of v (excluding v itself), ascending EdgeId
        order of first occurrence."""
        seen = []
        have = set()
        for _, nbr, _ in self.snapshot_incident(v):
            if nbr != v and nbr not in have:
                have.add(nbr)
                seen.append(nbr)
        return seen

    # -- mutation --------------------------------------------------------

    def add_vertex(self, v):
        if v not in self._vertices:
            self._vertices.add(v)
            self._inc[v] = set()
            self._deg[v] = 0

    def _alloc_eid(self):
        e = self._next_eid
        self._next_eid += 1
        return e

    def _insert(self, u, v, w, eid=None):
        if u not in self._vertices:
            raise UnknownVertex(f"vertex {u}")
        if v not in self._vertices:
            raise UnknownVertex(f"vertex {v}")
        if not w > 0:
            raise NonPositiveWeight(f"weight {w}")
        if eid is None:
            eid = self._alloc_eid()
        else:
            if eid in self._edges:
                raise ValueError(f"edge id {eid} already present")
            self._next_eid = max(self._next_eid, eid + 1)
        self._edges[eid] = (u, v, w)
        self._inc[u].add(eid)
        self._inc[v].add(eid)
        self._deg[u] += w
        if u != v:
            self._deg[v] += w
        return eid

    def _delete(self, eid):
        try:
            u, v, w = self._edges.pop(eid)
        except KeyError:
            raise UnknownEdge(f"edge {eid}") from None
        self._inc[u].discard(eid)
        self._inc[v].discard(eid)
        self._deg[u] -= w
        if u != v:
            self._deg[v] -= w
        return u, v, w

    def apply_update(self, ev: UpdateEvent) -> ChangeSet:
        cs = ChangeSet()
        if ev.kind == INSERT:
            eid = self._insert(ev.u, ev.v, ev.w, ev.eid)
            cs.inserted.append((eid, ev.u, ev.v, ev.w))
        elif ev.kind == DELETE:
            self._delete(ev.eid)
            cs.deleted.append(ev.eid)
        elif ev.kind == BATCH_DELETE:
            for eid in ev.eids:
                if eid not in self._edges:
                    raise UnknownEdge(f"edge {eid}")
            for eid in ev.eids:
                self._delete(eid)
                cs.deleted.append(eid)
        else:
            raise ValueError(f"unknown update kind {ev.kind!r}")
        self._stage += 1
        self.log.append(
            UpdateEvent(ev.kind, self._stage, ev.u, ev.v, ev.w,
                        cs.inserted[0][0] if ev.kind == INSERT else ev.eid,
                        ev.eids))
        return cs

    def insert_edge(self, u, v, w=1):
        return self.apply_update(UpdateEvent.insert(u, v, w)).inserted[0][0]

    def delete_edge(self, eid):
        self.apply_update(UpdateEvent.delete(eid))

    # -- derived graphs --------------------------------------------------

    def copy(self):
        g = DynamicGraph(self._vertices)
        for e, (u, v, w) in self._edges.items():
            g._insert(u, v, w, eid=e)
        g._next_eid = self._next_eid
        return g

    def induced_subgraph(self, vs):
        """Subgraph on vertex set vs keeping original vertex/edge ids."""
        vs = set(vs)
        if not vs <= self._vertices:
            raise UnknownVertex(f"vertices {vs - self._vertices}")
        g = DynamicGraph(vs)
        for e, (u, v, w) in self._edges.items():
            if u in vs and v in vs:
                g._insert(u, v, w, eid=e)
        return g

    def edge_subgraph(self, eids, vertices=None):
        """Subgraph with the given edges (original ids), on either the
        given vertex set or the union of endpoints."""
        eids = sorted(set(eids))
        for e in eids:
            if e not in self._edges:
                raise UnknownEdge(f"edge {e}")
        if vertices is None:
            vertices = set()
            for e in eids:
                u, v, _ = self._edges[e]
                vertices.update((u, v))
        g = DynamicGraph(vertices)
        for e in eids:
            u, v, w = self._edges[e]
            g._insert(u, v, w, eid=e)
        return g

    def dense_index(self):
        """(index map vertex->0..n-1, sorted vertex list)."""
        vs = self.vertices()
        return {v: i for i, v in enumerate(vs)}, vs

    def edge_arrays(self):
        """(us, vs, ws) lists densely relabelled, ascending EdgeId."""
        idx, _ = self.dense_index()
        us, vs_, ws = [], [], []
        for _, u, v, w in self.edges():
            us.append(idx[u])
            vs_.append(idx[v])
            ws.append(w)
        return us, vs_, ws

    def edge_multiset(self):
        """Multiset of (min(u,v), max(u,v), w) for equality checks."""
        out = {}
        for _, u, v, w in self.edges():
            key = (min(u, v), max(u, v), w)
            out[key] = out.get(key, 0) + 1
        return out

    def check_degree_cache(self):
        """Recompute every degree from scratch; raise on mismatch."""
        fresh = {v: 0 for v in self._vertices}
        for u, v, w in self._edges.values():
            fresh[u] += w
            if u != v:
                fresh[v] += w
        if fresh != self._deg:
            bad = {v for v in fresh if fresh[v] != self._deg[v]}
            raise AssertionError(f"degree cache drift at {bad}")
        return True

    def is_unweighted(self):
        return all(w == 1 for _, _, w in self._edges.values())


def replay(initial: DynamicGraph, log) -> DynamicGraph:
    """Re-apply an update log to a copy of the initial graph."""
    g = initial.copy()
    for ev in log:
        g.apply_update(
            UpdateEvent(ev.kind, u=ev.u, v=ev.v, w=ev.w,
                        eid=ev.eid if ev.kind != INSERT else ev.eid,
                        eids=ev.eids))
    return g
