"""Stable external formats: edge-list text files and JSON-lines traces.

Edge list: header line ``n m`` then one ``u v w`` line per edge (w omitted
means 1).  Update trace: one JSON object per line with fields
{t, op, u, v, w, eid}.
"""

from __future__ import annotations

import json

from .graph import BATCH_DELETE, DELETE, INSERT, DynamicGraph, UpdateEvent


def write_edge_list(g: DynamicGraph, path):
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for _, u, v, w in g.edges():
            if w == 1:
                fh.write(f"{u} {v}\n")
            else:
                fh.write(f"{u} {v} {w}\n")


def read_edge_list(path) -> DynamicGraph:
    with open(path) as fh:
        header = fh.readline().split()
        n, m = int(header[0]), int(header[1])
        g = DynamicGraph(n)
        for _ in range(m):
            parts = fh.readline().split()
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) > 2 else 1
            if w == int(w):
                w = int(w)
            g.insert_edge(u, v, w)
    return g


def write_trace(events, path):
    with open(path, "w") as fh:
        for ev in events:
            fh.write(json.dumps(event_to_obj(ev)) + "\n")


def event_to_obj(ev: UpdateEvent):
    obj = {"t": ev.stage, "op": ev.kind}
    if ev.kind == INSERT:
        obj.update(u=ev.u, v=ev.v, w=ev.w)
        if ev.eid is not None:
            obj["eid"] = ev.eid
    elif ev.kind == DELETE:
        obj["eid"] = ev.eid
    elif ev.kind == BATCH_DELETE:
        obj["eid"] = list(ev.eids)
    return obj


def obj_to_event(obj) -> UpdateEvent:
    op = obj["op"]
    if op == INSERT:
        return UpdateEvent(INSERT, obj.get("t", -1), obj["u"], obj["v"],
                           obj.get("w", 1), obj.get("eid"))
    if op == DELETE:
        return UpdateEvent(DELETE, obj.get("t", -1), eid=obj["eid"])
    if op == BATCH_DELETE:
        return UpdateEvent(BATCH_DELETE, obj.get("t", -1),
                           eids=tuple(obj["eid"]))
    raise ValueError(f"unknown op {op!r}")


def read_trace(path):
    events = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                events.append(obj_to_event(json.loads(line)))
    return events
