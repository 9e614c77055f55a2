"""Black-box reduction machinery: problem kinds with the five closure
properties, weight bucketing, the amortized full pipeline, phased
worst-case rebuild, and the Eppstein sparsification tree.

A graph problem maps (G, eps) to a set of acceptable graphs with e^eps
approximation semantics.  The reductions only use five closure laws —
perturbation, union, contraction, transition, transitivity — so any kind
supplying a membership oracle plus union/contraction assemblers plugs
in.  Weighted inputs are split into unweighted buckets
[e^{k eps/2}, e^{(k+1) eps/2}); each bucket runs the uniform-degree
dynamic decomposition; each cluster's degree-equalized companion feeds a
sampler whose output is contracted back and union-scaled together.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace

from . import oracles
from .decomp import phi_max
from .derive import Bounds, SparsifierOutput, spectral_query
from .dyndecomp import BucketDecomposition, dd_init, dd_update
from .errors import (BadEpsilon, CapacityExceeded, KindMismatch,
                     NonPositiveWeight, ParameterTooSmall)
from .expanders import contract
from .graph import (BATCH_DELETE, DELETE, INSERT, DynamicGraph, UpdateEvent)
from .proactive import (SamplerConfig, SamplerState, current_sparsifier,
                        edge_deletion_amortized)

KINDS = ("cut", "spanner", "spectral")
_ALIASES = {"cutsparsifier": "cut", "spanner": "spanner",
            "spectralsparsifier": "spectral", "cut": "cut",
            "spectral": "spectral"}


def canonical_kind(name):
    key = str(name).lower().replace("_", "").replace("-", "")
    if key not in _ALIASES:
        raise KindMismatch(f"unknown problem kind {name!r}")
    return _ALIASES[key]


@dataclass(frozen=True)
class ProblemKind:
    """One of cut / spanner / spectral with e^eps approximation semantics:
    cut and spectral ratios must sit in [e^-eps, e^eps]; a spanner member
    is a subgraph with hop stretch at most e^eps."""

    name: str
    eps: float

    def __post_init__(self):
        object.__setattr__(self, "name", canonical_kind(self.name))
        if self.eps < 0:
            raise BadEpsilon(f"eps={self.eps} < 0")

    def membership(self, g: DynamicGraph, h: DynamicGraph, eps=None,
                   rng=None) -> oracles.VerificationReport:
        eps = self.eps if eps is None else eps
        if self.name == "cut":
            return oracles.verify_cut_membership(g, h, eps=eps, rng=rng)
        if self.name == "spectral":
            return oracles.verify_spectral(g, h, eps=eps)
        return oracles.verify_spanner(g, h, t=math.exp(eps))


def scale_graph(g: DynamicGraph, s) -> DynamicGraph:
    out = DynamicGraph(g.vertex_set())
    for eid, u, v, w in g.edges():
        out._insert(u, v, w * s, eid=eid)
    return out


def union_graphs(parts) -> DynamicGraph:
    """Weighted union over the union of vertex sets; fresh edge ids."""
    vs = set()
    for p in parts:
        vs |= p.vertex_set()
    out = DynamicGraph(vs)
    for p in parts:
        for _, u, v, w in p.edges():
            out.insert_edge(u, v, w)
    return out


def contract_subset(g: DynamicGraph, W, label=None) -> DynamicGraph:
    """Merge the vertex subset W into a single vertex (edges inside W
    become self-loops)."""
    W = set(W)
    if not W:
        return g.copy()
    label = min(W) if label is None else label
    keep = (g.vertex_set() - W) | {label}
    out = DynamicGraph(keep)
    for eid, u, v, w in g.edges():
        a = label if u in W else u
        b = label if v in W else v
        out._insert(a, b, w, eid=eid)
    return out


def union_scaled(parts) -> SparsifierOutput:
    """Assemble [(SparsifierOutput, scale)] by the union property:
    U s_i H_i approximates U s_i G_i at the worst component accuracy."""
    parts = list(parts)
    if not parts:
        return SparsifierOutput(DynamicGraph(0), "cut", Bounds(1.0, 1.0))
    kinds = {p.kind for p, _ in parts}
    if len(kinds) > 1:
        raise KindMismatch(f"mixed kinds {sorted(kinds)}")
    kind = kinds.pop()
    g = union_graphs([scale_graph(p.graph, s) for p, s in parts])
    if kind == "spanner":
        bound = max(p.bounds for p, _ in parts)
    else:
        bound = Bounds(min(p.bounds.lo for p, _ in parts),
                       max(p.bounds.hi for p, _ in parts))
    return SparsifierOutput(g, kind, bound, {"parts": len(parts)})


# -- weight bucketing --------------------------------------------------


@dataclass
class WeightBuckets:
    """Edges grouped by weight into half-open intervals
    [e^{k eps/2}, e^{(k+1) eps/2}); bucket graphs are unweighted, share
    the vertex set, and keep the original edge ids."""

    eps: float
    vertices: set
    index: dict = field(default_factory=dict)  # eid -> k
    graphs: dict = field(default_factory=dict)  # k -> DynamicGraph

    def bucket_of(self, w):
        if w <= 0:
            raise NonPositiveWeight(f"weight {w}")
        return math.floor(math.log(w) / (self.eps / 2))

    def scale(self, k):
        return math.exp((k + 1) * self.eps / 2)

    def add_edge(self, eid, u, v, w):
        k = self.bucket_of(w)
        if k not in self.graphs:
            self.graphs[k] = DynamicGraph(self.vertices)
        self.graphs[k]._insert(u, v, 1, eid=eid)
        self.index[eid] = k
        return k

    def remove_edge(self, eid):
        k = self.index.pop(eid)
        self.graphs[k]._delete(eid)
        return k

    def reconstruction(self) -> DynamicGraph:
        """U_k e^{(k+1) eps/2} * G_k: dominates the input edgewise within
        a factor e^{eps/2}."""
        out = DynamicGraph(self.vertices)
        for k, gk in sorted(self.graphs.items()):
            s = self.scale(k)
            for eid, u, v, _ in gk.edges():
                out._insert(u, v, s, eid=eid)
        return out


def bucket_by_weight(g: DynamicGraph, eps) -> WeightBuckets:
    if eps <= 0:
        raise BadEpsilon(f"eps={eps} <= 0")
    wb = WeightBuckets(eps, g.vertex_set())
    for eid, u, v, w in g.edges():
        wb.add_edge(eid, u, v, w)
    return wb


# -- inner dynamic algorithms ------------------------------------------


class ExactInner:
    """The identity sparsifier: always a member at any accuracy."""

    def __init__(self, g: DynamicGraph):
        self.g = g.copy()

    def apply(self, ev: UpdateEvent):
        self.g.apply_update(ev)

    def output(self) -> DynamicGraph:
        return self.g.copy()


class DecompositionInner:
    """Bucketed expander decomposition whose output is the union of its
    cluster graphs.  Edge conservation makes the union equal the current
    graph, so the output is an exact member while every update is served
    through the decompose/prune machinery."""

    def __init__(self, g: DynamicGraph, phi=None):
        if phi is None:
            phi = 0.9 * phi_max(max(g.m, 2))
        self.state = dd_init(g, phi, uniform=False)

    def apply(self, ev: UpdateEvent):
        dd_update(self.state, ev)

    def output(self) -> DynamicGraph:
        out = DynamicGraph(self.state.g.vertex_set())
        for cl in self.state.clusters.values():
            for eid, u, v, w in cl.graph.edges():
                out._insert(u, v, w, eid=eid)
        return out


class CertifiedSampleInner:
    """Las-Vegas cut sampler: draw a Bernoulli(p) subset at weight 1/p,
    oracle-check membership at eps, and escalate p toward 1 (the identity)
    until the check passes.  The advertised accuracy is therefore honest
    by construction."""

    def __init__(self, g: DynamicGraph, eps, seed=0, p0=0.7):
        self.g = g.copy()
        self.eps = eps
        self.rng = random.Random(seed)
        self.p0 = p0
        self._out = None
        self._resample()

    def _candidate(self, p):
        out = DynamicGraph(self.g.vertex_set())
        for eid, u, v, w in self.g.edges():
            if p >= 1.0:
                out._insert(u, v, w, eid=eid)
            elif self.rng.random() < p:
                out._insert(u, v, w / p, eid=eid)
        return out

    def _resample(self):
        p = self.p0
        while True:
            cand = self._candidate(p)
            if p >= 1.0 or self.g.m == 0 or self.g.n > oracles.EXACT_CUT_CAP:
                self._out = cand if p >= 1.0 else self._candidate(1.0)
                return
            if oracles.verify_cut_membership(self.g, cand, eps=self.eps).ok:
                self._out = cand
                return
            p = min(1.0, p * 1.5)

    def apply(self, ev: UpdateEvent):
        self.g.apply_update(ev)
        self._resample()

    def output(self) -> DynamicGraph:
        return self._out.copy()


# -- amortized full pipeline -------------------------------------------


class _ClusterSampler:
    """Per-cluster sampler over the degree-equalized companion; output is
    contracted back to the cluster's vertices and Las-Vegas certified
    (escalating to the exact cluster graph on failure)."""

    def __init__(self, cluster, kind, eps, phi, rng):
        self.cluster = cluster
        self.kind = kind
        self.eps = eps
        self.phi = phi
        self.rng = rng
        self.escalated = False
        self.t = 0
        self.state = None
        companion = cluster.companion
        if kind == "cut" and companion is not None and companion.m > 0:
            degs = [companion.degree(v) for v in companion.vertices()
                    if companion.degree(v) > 0]
            cfg = SamplerConfig.desk(
                companion.n, phi, max(1, min(degs, default=1)),
                max(1, max(degs, default=1)))
            self.state = SamplerState(companion, cfg,
                                      random.Random(rng.randrange(2 ** 30)))

    def delete(self, eid):
        if self.state is None:
            return
        cmap = self.cluster.cmap
        image = eid if cmap is None else cmap.image_edges.get(eid, eid)
        if self.state.h.has_edge(image):
            self.t += 1
            edge_deletion_amortized(self.state, image, self.t)

    def _raw_output(self) -> DynamicGraph:
        cl = self.cluster
        if self.kind == "cut" and self.state is not None:
            h = current_sparsifier(self.state)
            return h if cl.cmap is None else contract(h, cl.cmap)
        if self.kind == "spectral" and cl.graph.m > 0:
            degs = [cl.graph.degree(v) for v in cl.graph.vertices()
                    if cl.graph.degree(v) > 0]
            return spectral_query(cl.graph, min(self.eps, 0.5), self.phi,
                                  max(1, min(degs, default=1)),
                                  self.rng).graph
        # spanner kind (and empty clusters): the cluster itself, stretch 1
        return cl.graph.copy()

    def output(self) -> SparsifierOutput:
        cl = self.cluster
        if not self.escalated:
            h = self._raw_output()
            ok = True
            if cl.graph.m and cl.graph.n <= oracles.EXACT_CUT_CAP:
                if self.kind == "spectral":
                    ok = oracles.verify_spectral(cl.graph, _strip_loops(h),
                                                 eps=self.eps).ok
                elif self.kind == "cut":
                    ok = oracles.verify_cut_membership(cl.graph, h,
                                                       eps=self.eps).ok
            if ok:
                bound = (1.0 if self.kind == "spanner"
                         else Bounds.from_eps(self.eps))
                return SparsifierOutput(h, self.kind, bound)
            self.escalated = True
        bound = 1.0 if self.kind == "spanner" else Bounds.from_eps(self.eps)
        return SparsifierOutput(cl.graph.copy(), self.kind, bound)


def _strip_loops(g: DynamicGraph) -> DynamicGraph:
    out = DynamicGraph(g.vertex_set())
    for eid, u, v, w in g.edges():
        if u != v:
            out._insert(u, v, w, eid=eid)
    return out


class AmortizedPipeline:
    """bucket_by_weight -> uniform dynamic decomposition per bucket ->
    sampler per cluster companion -> contract -> union_scaled.  The
    advertised accuracy splits as eps/2 for the weight bucketing plus
    eps/2 for the per-cluster samplers."""

    def __init__(self, g: DynamicGraph, eps, kind, phi=None, seed=0):
        self.kind = canonical_kind(kind)
        self.eps = eps
        self.eps_inner = eps / 2
        self.rng = random.Random(seed)
        self.g = g.copy()
        self.buckets = bucket_by_weight(self.g, eps)
        self.phi = phi
        self.decomps = {}
        self.samplers = {}  # bucket k -> {cid: _ClusterSampler}
        self.recourse_log = []
        self._last_sig = None
        for k, gk in sorted(self.buckets.graphs.items()):
            self._init_bucket(k, gk)

    def _phi_for(self, m):
        if self.phi is not None:
            return self.phi
        return 0.9 * phi_max(max(m, 2))

    def _init_bucket(self, k, gk):
        state = dd_init(gk, self._phi_for(gk.m), uniform=True)
        self.decomps[k] = state
        self.samplers[k] = {}
        for cid, cl in state.clusters.items():
            self._make_sampler(k, cid)

    def _make_sampler(self, k, cid):
        cl = self.decomps[k].clusters[cid]
        self.samplers[k][cid] = _ClusterSampler(
            cl, self.kind, self.eps_inner, self.decomps[k].phi, self.rng)

    def _route(self, k, delta):
        for cid in delta.removed:
            self.samplers[k].pop(cid, None)
        for cid, eid in delta.deleted_in:
            s = self.samplers[k].get(cid)
            if s is not None:
                s.delete(eid)
        for cid in delta.added:
            self._make_sampler(k, cid)

    def update(self, ev: UpdateEvent):
        if ev.kind == INSERT:
            eid = self.g._insert(ev.u, ev.v, ev.w, ev.eid)
            k = self.buckets.add_edge(eid, ev.u, ev.v, ev.w)
            if k not in self.decomps:
                self._init_bucket(k, DynamicGraph(self.g.vertex_set()))
            delta = dd_update(self.decomps[k],
                              UpdateEvent(INSERT, u=ev.u, v=ev.v, w=1,
                                          eid=eid))
            self._route(k, delta)
        elif ev.kind in (DELETE, BATCH_DELETE):
            eids = [ev.eid] if ev.kind == DELETE else list(ev.eids)
            for eid in eids:
                self.g._delete(eid)
                k = self.buckets.remove_edge(eid)
                delta = dd_update(self.decomps[k], UpdateEvent.delete(eid))
                self._route(k, delta)
        else:
            raise ValueError(f"unknown update kind {ev.kind!r}")
        return self.output()

    def output(self) -> SparsifierOutput:
        parts = []
        for k in sorted(self.samplers):
            s_k = self.buckets.scale(k)
            for cid in sorted(self.samplers[k]):
                parts.append((self.samplers[k][cid].output(), s_k))
        out = union_scaled(parts) if parts else SparsifierOutput(
            DynamicGraph(self.g.vertex_set()), self.kind,
            1.0 if self.kind == "spanner" else Bounds(1.0, 1.0))
        out.graph = _align_vertices(out.graph, self.g.vertex_set())
        # total accuracy: inner eps/2 plus the e^{eps/2} bucket perturbation
        if self.kind == "spanner":
            out.bounds = math.exp(self.eps)
        else:
            out.bounds = Bounds(math.exp(-self.eps), math.exp(self.eps))
        out.kind = self.kind
        sig = out.graph.edge_multiset()
        if self._last_sig is not None:
            keys = set(sig) | set(self._last_sig)
            self.recourse_log.append(sum(
                abs(sig.get(x, 0) - self._last_sig.get(x, 0)) for x in keys))
        self._last_sig = sig
        return out

    def verify(self, rng=None) -> oracles.VerificationReport:
        return ProblemKind(self.kind, self.eps).membership(
            self.g, self.output().graph, rng=rng)


def _align_vertices(g: DynamicGraph, vs) -> DynamicGraph:
    if g.vertex_set() == set(vs):
        return g
    out = DynamicGraph(set(vs) | g.vertex_set())
    for eid, u, v, w in g.edges():
        out._insert(u, v, w, eid=eid)
    return out


def fully_dynamic_amortized(g: DynamicGraph, eps, kind, phi=None,
                            seed=0) -> AmortizedPipeline:
    return AmortizedPipeline(g, eps, kind, phi, seed)


# -- phased worst-case rebuild ------------------------------------------


@dataclass
class _Copy:
    inner: object
    phase: str = "serve"
    contrib: dict = field(default_factory=dict)  # eid -> (u, v, w)
    queue: list = field(default_factory=list)
    drain_quota: int = 0
    fill_quota: int = 0


class PhasedRebuild:
    """C staggered copies; exactly one copy at a time walks the
    drain -> rebuild -> catch-up -> fill window while the rest serve.
    The output is the union of the Delta_w-scaled contributions, valid at
    eps by the interpolation argument: with C = ceil(4 + 1/(e^{eps/2}-1))
    and Delta_w = 1/(3 + 1/(e^{eps/2}-1)), every cut's weight stays in
    [(C-1) Delta_w, C Delta_w] times the truth, inside [e^-eps, e^eps]."""

    def __init__(self, inner_factory, g: DynamicGraph, eps, k=None):
        if eps <= 0:
            raise BadEpsilon(f"eps={eps} <= 0")
        r = 1.0 / math.expm1(eps / 2)
        self.C = math.ceil(4 + r)
        self.delta_w = 1.0 / (3.0 + r)
        self.k = max(4, k if k is not None else g.n)
        self.q = max(1, self.k // 4)  # steps per sub-phase
        self.inner_factory = inner_factory
        self.g = g.copy()
        self.step = 0
        self.copies = []
        for _ in range(self.C):
            inner = inner_factory(self.g)
            self.copies.append(_Copy(inner, contrib=_edge_map(inner.output())))
        self.recourse_log = []
        self.cap_log = []

    # schedule: windows of k steps rotate round-robin over the C copies
    def _owner(self, step):
        return ((step - 1) // self.k) % self.C

    def _subphase(self, step):
        p = (step - 1) % self.k
        if p < self.q:
            return "drain", p
        if p < 2 * self.q:
            return "rebuild", p - self.q
        if p < 3 * self.q:
            return "catch-up", p - 2 * self.q
        return "fill", p - 3 * self.q

    def phases(self):
        return [c.phase for c in self.copies]

    def update(self, ev: UpdateEvent):
        self.step += 1
        recourse = 0
        if ev.kind == INSERT and ev.eid is None:
            eid = self.g._insert(ev.u, ev.v, ev.w)
            ev = replace(ev, eid=eid)
        else:
            self.g.apply_update(ev)
        owner = self._owner(self.step)
        sub, pos = self._subphase(self.step)
        deleted = ([ev.eid] if ev.kind == DELETE else
                   list(ev.eids) if ev.kind == BATCH_DELETE else [])
        for i, c in enumerate(self.copies):
            if i == owner:
                continue
            c.inner.apply(ev)
            new = _edge_map(c.inner.output())
            recourse += _dict_delta(c.contrib, new)
            c.contrib = new
        c = self.copies[owner]
        # deletions leave every contribution immediately (no stale edges)
        for eid in deleted:
            if eid in c.contrib:
                del c.contrib[eid]
                recourse += 1
        cap = 2 * (self.C - 1)  # serving copies, exact inner: <= 2 each
        fill_len = self.k - 3 * self.q
        if sub == "drain":
            c.phase = "drain"
            if pos == 0:
                c.drain_quota = math.ceil(
                    max(1, len(c.contrib)) / max(1, self.q))
            quota = c.drain_quota if pos < self.q - 1 else len(c.contrib)
            for eid in sorted(c.contrib)[:quota]:
                del c.contrib[eid]
                recourse += 1
            cap += quota
        elif sub == "rebuild":
            c.phase = "rebuild"
            if pos == 0:
                c.inner = self.inner_factory(self.g)
                c.queue = []
            else:
                c.queue.append(ev)
        elif sub == "catch-up":
            c.phase = "catch-up"
            c.queue.append(ev)
            for qev in c.queue[:2]:
                c.inner.apply(qev)
            c.queue = c.queue[2:]
        else:  # fill
            c.phase = "fill"
            while c.queue:
                c.inner.apply(c.queue.pop(0))
            c.inner.apply(ev)
            target = _edge_map(c.inner.output())
            if pos == 0:
                c.fill_quota = math.ceil(
                    max(1, len(target)) / max(1, fill_len)) + 2
            stale = [e for e in c.contrib if e not in target]
            for e in stale:
                del c.contrib[e]
                recourse += 1
            missing = sorted(e for e in target if e not in c.contrib)
            quota = c.fill_quota if pos < fill_len - 1 else len(missing)
            for e in missing[:quota]:
                c.contrib[e] = target[e]
                recourse += 1
            cap += quota + len(stale)
            if pos == fill_len - 1:
                c.phase = "serve"
        cap += len(deleted) * self.C
        self.recourse_log.append(recourse)
        self.cap_log.append(cap)
        return self.output()

    def non_serve_count(self):
        return sum(1 for c in self.copies if c.phase != "serve")

    def output(self) -> SparsifierOutput:
        out = DynamicGraph(self.g.vertex_set())
        for c in self.copies:
            for eid, (u, v, w) in c.contrib.items():
                out.insert_edge(u, v, w * self.delta_w)
        eps_adv = max(
            abs(math.log(max(self.C * self.delta_w, 1e-12))),
            abs(math.log(max((self.C - 1) * self.delta_w, 1e-12))))
        return SparsifierOutput(out, "cut", Bounds(
            (self.C - 1) * self.delta_w, self.C * self.delta_w),
            {"C": self.C, "delta_w": self.delta_w, "eps": eps_adv})

    def verify(self, eps, rng=None):
        return oracles.verify_cut_membership(
            self.g, self.output().graph, eps=eps, rng=rng)


def _edge_map(g: DynamicGraph):
    return {eid: (u, v, w) for eid, u, v, w in g.edges()}


def _dict_delta(a, b):
    keys = set(a) | set(b)
    return sum(1 for k in keys if a.get(k) != b.get(k))


def phased_rebuild(inner_factory, g: DynamicGraph, eps,
                   k=None) -> PhasedRebuild:
    return PhasedRebuild(inner_factory, g, eps, k)


# -- Eppstein sparsification tree ---------------------------------------


@dataclass
class _TreeNode:
    nid: int
    depth: int
    children: list = field(default_factory=list)
    parent: object = None
    input: DynamicGraph = None
    inner: object = None
    out_cache: dict = field(default_factory=dict)


class EppsteinTree:
    """Depth-L d-ary tree (L = ceil(log N / log d)): leaf subgraphs
    partition the edges, every internal node's input is the union of its
    children's outputs, and an update propagates leaf-to-root.  With
    inner accuracy eps per level the root is a member at L*eps."""

    def __init__(self, g: DynamicGraph, eps, d, N, inner_factory,
                 leaf_capacity=None):
        if d < 2:
            raise ParameterTooSmall(f"d={d} < 2")
        self.g = g.copy()
        self.eps = eps
        self.d = d
        self.N = N
        self.L = max(1, math.ceil(math.log(max(N, 2)) / math.log(d)))
        self.leaf_capacity = leaf_capacity
        self.inner_factory = inner_factory
        self.propagation_log = []  # per update: [mutations at depth L..0]
        self._nid = 0
        self.root = self._build(0)
        self.leaves = [n for n in self._walk(self.root)
                       if n.depth == self.L]
        self.owner = {}  # eid -> leaf
        vs = self.g.vertex_set()
        for n in self._walk(self.root):
            n.input = DynamicGraph(vs)
        for eid, u, v, w in self.g.edges():
            leaf = self._balancer()
            leaf.input._insert(u, v, w, eid=eid)
            self.owner[eid] = leaf
        # build inners deepest-first so every parent's input is the union
        # of its children's outputs before its own inner is constructed
        for n in sorted(self._walk(self.root), key=lambda x: -x.depth):
            n.inner = inner_factory(n.input)
            n.out_cache = _edge_map(n.inner.output())
            if n.parent is not None:
                for eid, (u, v, w) in n.out_cache.items():
                    n.parent.input._insert(u, v, w, eid=eid)

    def _build(self, depth, parent=None):
        node = _TreeNode(self._nid, depth, parent=parent)
        self._nid += 1
        if depth < self.L:
            node.children = [self._build(depth + 1, node)
                             for _ in range(self.d)]
        return node

    def _walk(self, node):
        yield node
        for ch in node.children:
            yield from self._walk(ch)

    def _balancer(self):
        """Least-loaded leaf with spare capacity, lowest id on ties."""
        best = None
        for leaf in self.leaves:
            if (self.leaf_capacity is not None
                    and leaf.input.m >= self.leaf_capacity):
                continue
            if best is None or leaf.input.m < best.input.m:
                best = leaf
        if best is None:
            raise CapacityExceeded(
                f"all {len(self.leaves)} leaves at capacity "
                f"{self.leaf_capacity}")
        return best

    def update(self, ev: UpdateEvent):
        if ev.kind == INSERT:
            eid = self.g._insert(ev.u, ev.v, ev.w, ev.eid)
            leaf = self._balancer()
            self.owner[eid] = leaf
            node_ev = UpdateEvent(INSERT, u=ev.u, v=ev.v, w=ev.w, eid=eid)
        elif ev.kind == DELETE:
            self.g._delete(ev.eid)
            leaf = self.owner.pop(ev.eid)
            node_ev = ev
        else:
            raise ValueError(f"unsupported update kind {ev.kind!r}")
        counts = []
        node = leaf
        events = [node_ev]
        while node is not None:
            before = node.out_cache
            for e in events:
                node.input.apply_update(e)
                node.inner.apply(e)
            after = _edge_map(node.inner.output())
            counts.append(_dict_delta(before, after))
            node.out_cache = after
            # synthesize the output delta as events for the parent
            events = []
            for eid in sorted(set(before) | set(after)):
                if before.get(eid) == after.get(eid):
                    continue
                if eid in before:
                    events.append(UpdateEvent.delete(eid))
                if eid in after:
                    u, v, w = after[eid]
                    events.append(UpdateEvent(INSERT, u=u, v=v, w=w, eid=eid))
            node = node.parent
        self.propagation_log.append(counts)
        return self.output()

    def output(self) -> SparsifierOutput:
        eps_total = self.L * self.eps
        return SparsifierOutput(
            _align_vertices(self.root.inner.output(), self.g.vertex_set()),
            "cut", Bounds.from_eps(eps_total),
            {"L": self.L, "eps_per_level": self.eps})

    def verify(self, rng=None):
        return oracles.verify_cut_membership(
            self.g, self.output().graph, eps=self.L * self.eps, rng=rng)


def eppstein_maintain(g, eps, d, N, inner_factory,
                      leaf_capacity=None) -> EppsteinTree:
    return EppsteinTree(g, eps, d, N, inner_factory, leaf_capacity)
