# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cut-enumeration kernel.

Same contract as _pykernel: cut index s in [0, 2**(n-1)) encodes the
side-set {v < n-1 : bit v of s set}; vertex n-1 pinned to the complement.
"""

import numpy as np

cimport numpy as cnp

IMPL = "compiled"


def crossing_counts(int n, cnp.int64_t[:] us, cnp.int64_t[:] vs):
    cdef Py_ssize_t ncuts = 1 << (n - 1)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(ncuts, dtype=np.int64)
    cdef cnp.int64_t[:] o = out
    cdef Py_ssize_t e, s, m = us.shape[0]
    cdef long u, v
    for e in range(m):
        u = us[e]
        v = vs[e]
        if u == v:
            continue
        for s in range(ncuts):
            o[s] += (s >> u ^ s >> v) & 1
    return out


def crossing_weights(int n, cnp.int64_t[:] us, cnp.int64_t[:] vs, cnp.float64_t[:] ws):
    cdef Py_ssize_t ncuts = 1 << (n - 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(ncuts, dtype=np.float64)
    cdef cnp.float64_t[:] o = out
    cdef Py_ssize_t e, s, m = us.shape[0]
    cdef long u, v
    cdef double w
    for e in range(m):
        u = us[e]
        v = vs[e]
        if u == v:
            continue
        w = ws[e]
        for s in range(ncuts):
            if (s >> u ^ s >> v) & 1:
                o[s] += w
    return out


def subset_volumes(int n, cnp.float64_t[:] deg):
    cdef Py_ssize_t ncuts = 1 << (n - 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(ncuts, dtype=np.float64)
    cdef cnp.float64_t[:] o = out
    cdef Py_ssize_t s
    cdef long v
    cdef double d
    for v in range(n - 1):
        d = deg[v]
        if d == 0.0:
            continue
        for s in range(ncuts):
            if (s >> v) & 1:
                o[s] += d
    return out


def subset_volumes_int(int n, cnp.int64_t[:] deg):
    cdef Py_ssize_t ncuts = 1 << (n - 1)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(ncuts, dtype=np.int64)
    cdef cnp.int64_t[:] o = out
    cdef Py_ssize_t s
    cdef long v, d
    for v in range(n - 1):
        d = deg[v]
        if d == 0:
            continue
        for s in range(ncuts):
            if (s >> v) & 1:
                o[s] += d
    return out
