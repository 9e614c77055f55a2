"""Cut-enumeration kernel: compiled extension if available, numpy fallback.

Exports crossing_counts / crossing_weights / subset_volumes /
subset_volumes_int plus IMPL naming the selected implementation.  Both
implementations share the cut-indexing convention documented in _pykernel.
"""

import numpy as np

from . import _pykernel

try:
    from . import _ckernel as _impl
except ImportError:  # extension not built; portable kernel is equivalent
    _impl = _pykernel

IMPL = _impl.IMPL


def _as_i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def _as_f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def crossing_counts(n, us, vs):
    if n < 1:
        raise ValueError("need at least one vertex")
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    return _impl.crossing_counts(int(n), _as_i64(us), _as_i64(vs))


def crossing_weights(n, us, vs, ws):
    if n < 1:
        raise ValueError("need at least one vertex")
    if n == 1:
        return np.zeros(1, dtype=np.float64)
    return _impl.crossing_weights(int(n), _as_i64(us), _as_i64(vs), _as_f64(ws))


def subset_volumes(n, deg):
    if n == 1:
        return np.zeros(1, dtype=np.float64)
    return _impl.subset_volumes(int(n), _as_f64(deg))


def subset_volumes_int(n, deg):
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    return _impl.subset_volumes_int(int(n), _as_i64(deg))


def implementations():
    """Return {name: module} for every importable kernel implementation."""
    impls = {"portable": _pykernel}
    if _impl is not _pykernel:
        impls["compiled"] = _impl
    return impls
