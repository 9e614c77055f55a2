"""Command-line surface: generators, decomposition, pruning, maintenance
pipelines, adversary traces, benchmarks, verification, and flow solvers.

Exit codes: 0 success, 1 verification failure, 2 usage error.  All
commands are deterministic given --seed.  Metrics CSVs share the columns
stage, op, |H|, recourse, min_ratio, max_ratio, promise_ok, violations.
"""

from __future__ import annotations

import csv
import json
import math
import random
import sys
import time

import click

from . import cutkernel, io, oracles
from .adversary import (CutDrain, ExperimentConfig, IsolationAttack,
                        MatchingCutAttack, Oblivious, run_experiment)
from .decomp import decompose_base, decompose_edges, decompose_uniform
from .errors import DynsparseError
from .expanders import build_explicit_expander, circulant_graph
from .flows import (DemandPair, ExactSP, SpannerSP, VertexCapGraph,
                    max_concurrent, max_throughput)
from .graph import DynamicGraph, UpdateEvent
from .pruning import (AmortizedPruneState, UniformPruneState, WcPruneState,
                      prune_amortized, prune_uniform, prune_worstcase)
from .reduction import (DecompositionInner, ProblemKind,
                        fully_dynamic_amortized, phased_rebuild)

METRIC_COLUMNS = ["stage", "op", "|H|", "recourse", "min_ratio",
                  "max_ratio", "promise_ok", "violations"]


def _write_metrics(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(METRIC_COLUMNS)
        for r in rows:
            w.writerow([r.get(c, "") for c in METRIC_COLUMNS])


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, float):
        return f"{x:.6g}"
    return x


@click.group()
def cli():
    """Dynamic graph sparsifier toolkit."""


# -- gen -----------------------------------------------------------------


@cli.group()
def gen():
    """Generate graphs and update traces."""


@gen.command("expander")
@click.option("--n", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--out", type=click.Path(), required=True)
def gen_expander(n, d, out):
    """Explicit expander with degrees in [d-8, 2d]."""
    io.write_edge_list(build_explicit_expander(n, d), out)


@gen.command("circulant")
@click.option("--n", type=int, required=True)
@click.option("--offsets", default="1,2,3", show_default=True)
@click.option("--copies", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def gen_circulant(n, offsets, copies, out):
    offs = [int(x) for x in offsets.split(",") if x]
    io.write_edge_list(circulant_graph(n, offs, copies), out)


@gen.command("random")
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def gen_random(n, m, seed, out):
    """Connected random multigraph: a random tree plus random edges."""
    rng = random.Random(seed)
    g = DynamicGraph(n)
    for i in range(1, n):
        g.insert_edge(i, rng.randrange(i))
    while g.m < m:
        u, v = rng.sample(range(n), 2)
        g.insert_edge(u, v)
    io.write_edge_list(g, out)


@gen.command("trace")
@click.option("--g", "gpath", type=click.Path(exists=True), required=True)
@click.option("--events", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--insert-prob", type=float, default=0.5, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def gen_trace(gpath, events, seed, insert_prob, out):
    """Mixed insert/delete trace replayable against the given graph."""
    g = io.read_edge_list(gpath)
    rng = random.Random(seed)
    evs = []
    for _ in range(events):
        if g.m > 1 and rng.random() >= insert_prob:
            eid = rng.choice(sorted(g.edge_ids()))
            g.apply_update(UpdateEvent.delete(eid))
            evs.append(UpdateEvent.delete(eid))
        else:
            u, v = rng.sample(g.vertices(), 2)
            ev = UpdateEvent.insert(u, v)
            g.apply_update(ev)
            evs.append(ev)
    io.write_trace(evs, out)


# -- decompose -----------------------------------------------------------


@cli.command()
@click.option("--g", "gpath", type=click.Path(exists=True), required=True)
@click.option("--phi", type=float, required=True)
@click.option("--mode", type=click.Choice(["base", "edges", "uniform"]),
              default="edges", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def decompose(gpath, phi, mode, out):
    """Expander decomposition; emits a JSON summary of the parts."""
    g = io.read_edge_list(gpath)
    if mode == "base":
        part = decompose_base(g, phi)
        obj = {"mode": mode, "phi": phi,
               "parts": [sorted(p) for p in part.parts],
               "crossing": len(part.crossing),
               "certified": all(c.ok for c in part.certificates)}
    elif mode == "edges":
        dec = decompose_edges(g, phi)
        obj = {"mode": mode, "phi": phi, "rounds": dec.rounds,
               "clusters": [c.m for c in dec.clusters],
               "certified": all(c.ok for c in dec.certificates)}
    else:
        dec = decompose_uniform(g, phi)
        obj = {"mode": mode, "phi": phi,
               "clusters": [{"edges": uc.graph.m, "level": uc.level,
                             "delta": uc.delta}
                            for uc in dec.clusters],
               "certified": all(uc.certificate.ok for uc in dec.clusters)}
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    if not obj["certified"]:
        sys.exit(1)


# -- prune ---------------------------------------------------------------


@cli.command()
@click.option("--g", "gpath", type=click.Path(exists=True), required=True)
@click.option("--phi", type=float, required=True)
@click.option("--mode",
              type=click.Choice(["amortized", "uniform", "worstcase"]),
              default="amortized", show_default=True)
@click.option("--deletions", type=int, default=10, show_default=True)
@click.option("--gamma", type=int, default=64, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def prune(gpath, phi, mode, deletions, gamma, seed, out):
    """Run a seeded deletion trace through an expander-pruning state."""
    g = io.read_edge_list(gpath)
    rng = random.Random(seed)
    sizes = []
    if mode == "worstcase":
        state = WcPruneState(g, phi, gamma=gamma)
        step = prune_worstcase
    elif mode == "uniform":
        state = UniformPruneState(g, phi)
        step = prune_uniform
    else:
        state = AmortizedPruneState(g, phi)
        step = prune_amortized
    for _ in range(deletions):
        live = sorted(state.current.edge_ids()) if mode == "worstcase" \
            else sorted(state.work.edge_ids())
        if not live:
            break
        step(state, rng.choice(live))
        if mode == "worstcase":
            sizes.append(len(state.P))
        else:
            sizes.append(len(state.P))
    obj = {"mode": mode, "phi": phi, "deletions": len(sizes),
           "pruned_progression": sizes}
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


# -- maintain ------------------------------------------------------------


@cli.command()
@click.option("--kind", type=click.Choice(["cut", "spanner", "spectral"]),
              required=True)
@click.option("--mode", type=click.Choice(["amortized", "worstcase"]),
              default="amortized", show_default=True)
@click.option("--eps", type=float, default=1.0, show_default=True)
@click.option("--g", "gpath", type=click.Path(exists=True), required=True)
@click.option("--trace", "tpath", type=click.Path(exists=True), required=True)
@click.option("--verify-every", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True)
@click.option("--report", type=click.Path(), default=None)
def maintain(kind, mode, eps, gpath, tpath, verify_every, seed, out, report):
    """Maintain a sparsifier over an update trace; metrics CSV + final
    verification report JSON."""
    g = io.read_edge_list(gpath)
    events = io.read_trace(tpath)
    if mode == "amortized":
        pipe = fully_dynamic_amortized(g, eps, kind, seed=seed)
        update, output = pipe.update, pipe.output
        recourse = lambda: (pipe.recourse_log[-1] if pipe.recourse_log else 0)
        base = lambda: pipe.g
    else:
        pr = phased_rebuild(DecompositionInner, g, eps)
        update, output = pr.update, pr.output
        recourse = lambda: (pr.recourse_log[-1] if pr.recourse_log else 0)
        base = lambda: pr.g
    problem = ProblemKind(kind, eps)
    rows = []
    violations = 0
    last_rep = None
    for t, ev in enumerate(events, start=1):
        update(ev)
        row = {"stage": t, "op": ev.kind, "|H|": output().graph.m,
               "recourse": recourse(), "promise_ok": True}
        if t % verify_every == 0:
            h = output().graph
            if mode == "worstcase":
                rep = oracles.verify_cut_membership(base(), h, eps=eps)
            else:
                rep = problem.membership(base(), h)
            last_rep = rep
            if not rep.ok:
                violations += 1
            row["min_ratio"] = _fmt(rep.min_ratio)
            row["max_ratio"] = _fmt(rep.max_ratio)
        row["violations"] = violations
        rows.append(row)
    _write_metrics(out, rows)
    if last_rep is not None and report:
        with open(report, "w") as fh:
            json.dump(last_rep.to_obj(), fh, indent=2)
    if violations:
        sys.exit(1)


# -- trace (adversary experiments) ----------------------------------------


_STRATEGIES = {
    "oblivious": lambda seed, dmin, g: Oblivious(seed, dmin),
    "isolation": lambda seed, dmin, g: IsolationAttack(0, dmin, seed),
    "matching": lambda seed, dmin, g: MatchingCutAttack(
        frozenset(range(g.n // 2)), dmin, seed),
    "drain": lambda seed, dmin, g: CutDrain(
        frozenset(range(g.n // 2)), dmin, seed),
}


@cli.command("trace")
@click.option("--strategy", type=click.Choice(sorted(_STRATEGIES)),
              required=True)
@click.option("--n", type=int, default=16, show_default=True)
@click.option("--copies", type=int, default=2, show_default=True)
@click.option("--stages", type=int, default=25, show_default=True)
@click.option("--phi", type=float, default=0.3, show_default=True)
@click.option("--delta-min", type=int, default=20, show_default=True)
@click.option("--variant", type=click.Choice(["worstcase", "amortized"]),
              default="worstcase", show_default=True)
@click.option("--verify-every", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def trace_cmd(strategy, n, copies, stages, phi, delta_min, variant,
              verify_every, seed, out):
    """Run an adaptive-adversary experiment; per-stage metrics CSV."""
    factory = lambda: circulant_graph(n, range(1, n // 2), copies)
    g0 = factory()
    cfg = ExperimentConfig(
        graph_factory=factory,
        strategy_factory=lambda s: _STRATEGIES[strategy](s, delta_min, g0),
        phi=phi, delta_min=delta_min, stages=stages, seed=seed,
        variant=variant, verify_every=verify_every)
    tr = run_experiment(cfg)
    rows = []
    bad = 0
    for r in tr.records:
        if r.promise_ok and not (r.lower_ok and r.upper_ok):
            bad += 1
        rows.append({"stage": r.stage, "op": r.op, "|H|": r.size,
                     "recourse": r.recourse,
                     "min_ratio": _fmt(float(r.min_ratio)
                                       if r.min_ratio is not None else None),
                     "max_ratio": _fmt(float(r.max_ratio)
                                       if r.max_ratio is not None else None),
                     "promise_ok": r.promise_ok, "violations": bad})
    _write_metrics(out, rows)
    if bad:
        sys.exit(1)


# -- bench ----------------------------------------------------------------


@cli.command()
@click.option("--config", type=click.Path(exists=True), default=None,
              help="TOML file with [bench] sizes / trials (flags win).")
@click.option("--sizes", default=None, help="comma-separated vertex counts")
@click.option("--trials", type=int, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def bench(config, sizes, trials, seed, out):
    """Benchmark the cut-enumeration kernels (compiled vs portable)."""
    cfg = {"sizes": [12, 14, 16], "trials": 5}
    if config:
        import tomllib
        with open(config, "rb") as fh:
            cfg.update(tomllib.load(fh).get("bench", {}))
    if sizes:
        cfg["sizes"] = [int(x) for x in sizes.split(",") if x]
    if trials is not None:
        cfg["trials"] = trials
    rng = random.Random(seed)
    lines = [["impl", "n", "m", "seconds"]]
    for n in cfg["sizes"]:
        g = DynamicGraph(n)
        for i in range(1, n):
            g.insert_edge(i, rng.randrange(i))
        for _ in range(3 * n):
            u, v = rng.sample(range(n), 2)
            g.insert_edge(u, v)
        us, vs, _ = g.edge_arrays()
        for name, impl in sorted(cutkernel.implementations().items()):
            t0 = time.perf_counter()
            for _ in range(cfg["trials"]):
                impl.crossing_counts(n, cutkernel._as_i64(us),
                                     cutkernel._as_i64(vs))
            dt = (time.perf_counter() - t0) / cfg["trials"]
            lines.append([name, n, g.m, f"{dt:.6f}"])
    text = "\n".join(",".join(str(x) for x in row) for row in lines)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


# -- verify ----------------------------------------------------------------


@cli.command()
@click.option("--kind", type=click.Choice(["cut", "spanner", "spectral"]),
              required=True)
@click.option("--g", "gpath", type=click.Path(exists=True), required=True)
@click.option("--h", "hpath", type=click.Path(exists=True), required=True)
@click.option("--eps", type=float, default=None)
@click.option("--t", "stretch", type=float, default=None,
              help="spanner stretch bound")
@click.option("--out", type=click.Path(), default=None)
def verify(kind, gpath, hpath, eps, stretch, out):
    """Oracle-verify h against g; exit 1 on failure."""
    g = io.read_edge_list(gpath)
    h = io.read_edge_list(hpath)
    if kind == "spanner":
        rep = oracles.verify_spanner(g, h, t=stretch)
    elif kind == "spectral":
        rep = oracles.verify_spectral(g, h, eps=eps)
    else:
        rep = oracles.verify_cut_membership(g, h, eps=eps)
    text = json.dumps(rep.to_obj(), indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    if not rep.ok:
        sys.exit(1)


# -- flow -------------------------------------------------------------------


def _read_caps(path, g):
    caps = {}
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            v = int(parts[0])
            caps[v] = math.inf if parts[1] in ("inf", "Inf") \
                else float(parts[1])
    for v in g.vertices():
        caps.setdefault(v, math.inf)
    return caps


def _read_pairs(path):
    pairs = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            d = float(parts[2]) if len(parts) > 2 else 1.0
            pairs.append(DemandPair(int(parts[0]), int(parts[1]), d))
    return pairs


@cli.command()
@click.option("--mode", type=click.Choice(["throughput", "concurrent"]),
              required=True)
@click.option("--g", "gpath", type=click.Path(exists=True), required=True)
@click.option("--caps", type=click.Path(exists=True), required=True,
              help="lines: vertex capacity (capacity may be 'inf')")
@click.option("--pairs", "ppath", type=click.Path(exists=True), required=True,
              help="lines: s t [demand]")
@click.option("--eps", type=float, default=0.25, show_default=True)
@click.option("--sp", type=click.Choice(["exact", "spanner"]),
              default="exact", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def flow(mode, gpath, caps, ppath, eps, sp, out):
    """Approximate max-throughput / max-concurrent flow; JSON output with
    per-commodity path decompositions."""
    g = io.read_edge_list(gpath)
    vg = VertexCapGraph(g, _read_caps(caps, g))
    pairs = _read_pairs(ppath)
    oracle = ExactSP(g) if sp == "exact" else SpannerSP(g.copy(), 1.0)
    if mode == "throughput":
        state = max_throughput(vg, pairs, eps, sp_oracle=oracle)
    else:
        state = max_concurrent(vg, pairs, eps, sp_oracle=oracle)
    obj = {"mode": mode, "eps": eps,
           "values": {str(j): v for j, v in state.values.items()},
           "total_value": state.total_value(),
           "lambda": None if math.isnan(state.lam) else state.lam,
           "feasible": state.feasible(),
           "sp_calls": state.sp_calls,
           "paths": {str(j): [{"path": p, "amount": a} for p, a in pl]
                     for j, pl in state.paths.items()}}
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    if not obj["feasible"]:
        sys.exit(1)


def main():
    try:
        cli(standalone_mode=True)
    except DynsparseError as exc:  # domain errors are usage-level failures
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
