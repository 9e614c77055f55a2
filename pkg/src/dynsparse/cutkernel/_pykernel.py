"""Portable (numpy) implementation of the cut-enumeration kernel.

Cut indexing convention: for an n-vertex graph (vertices relabelled densely
to 0..n-1 by the caller), cut index s in [0, 2**(n-1)) encodes the side-set
S = {v < n-1 : bit v of s is set}.  Vertex n-1 is pinned to the complement,
so s ranges over exactly one representative per unordered bipartition and
the 2**(n-1) - 1 proper cuts are indices 1..2**(n-1)-1.
"""

import numpy as np

IMPL = "portable"


def crossing_counts(n, us, vs):
    """Number of edges crossing every cut; int64 array of length 2**(n-1).

    Self-loops (u == v) never cross any cut.
    """
    ncuts = 1 << (n - 1)
    masks = np.arange(ncuts, dtype=np.int64)
    out = np.zeros(ncuts, dtype=np.int64)
    for u, v in zip(us, vs):
        if u == v:
            continue
        out += (masks >> int(u) ^ masks >> int(v)) & 1
    return out


def crossing_weights(n, us, vs, ws):
    """Total weight crossing every cut; float64 array of length 2**(n-1)."""
    ncuts = 1 << (n - 1)
    masks = np.arange(ncuts, dtype=np.int64)
    out = np.zeros(ncuts, dtype=np.float64)
    for u, v, w in zip(us, vs, ws):
        if u == v:
            continue
        out += ((masks >> int(u) ^ masks >> int(v)) & 1) * float(w)
    return out


def subset_volumes(n, deg):
    """Sum of deg[v] over the side-set of every cut; float64 array."""
    ncuts = 1 << (n - 1)
    masks = np.arange(ncuts, dtype=np.int64)
    out = np.zeros(ncuts, dtype=np.float64)
    for v in range(n - 1):
        out += ((masks >> v) & 1) * float(deg[v])
    return out


def subset_volumes_int(n, deg):
    """Integer variant of subset_volumes for unweighted degree vectors."""
    ncuts = 1 << (n - 1)
    masks = np.arange(ncuts, dtype=np.int64)
    out = np.zeros(ncuts, dtype=np.int64)
    for v in range(n - 1):
        out += ((masks >> v) & 1) * int(deg[v])
    return out
