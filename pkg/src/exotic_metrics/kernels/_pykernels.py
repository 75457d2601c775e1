"""Numpy implementation of the scaled-integer cobweb sweeps.

Same contracts as the compiled module; used when the extension is not
built or when ``EXOTIC_METRICS_PURE_PYTHON`` is set.
"""
from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

_BLOCK = 256


def _dist(u1, v1, t1, u2, v2, t2, E):
    # Vortices carry u == v and t == 0, so their second exit (u, E) never wins.
    best = np.where((u1 != v1) & (u1 == u2) & (v1 == v2), np.abs(t1 - t2), 4 * E)
    for w1, c1 in ((u1, t1), (v1, E - t1)):
        for w2, c2 in ((u2, t2), (v2, E - t2)):
            best = np.minimum(best, c1 + c2 + np.where(w1 == w2, 0, E))
    return best


def batch(u1, v1, t1, u2, v2, t2, E):
    arrs = [np.asarray(a, dtype=np.int64) for a in (u1, v1, t1, u2, v2, t2)]
    return _dist(*arrs, np.int64(E))


def _rows(u, v, t, E, start, stop):
    sl = slice(start, stop)
    return _dist(u[sl, None], v[sl, None], t[sl, None], u[None, :], v[None, :], t[None, :], E)


def pairwise(u, v, t, E):
    u, v, t = (np.asarray(a, dtype=np.int64) for a in (u, v, t))
    n = len(u)
    out = np.empty((n, n), dtype=np.int64)
    for start in range(0, n, _BLOCK):
        out[start:start + _BLOCK] = _rows(u, v, t, np.int64(E), start, min(n, start + _BLOCK))
    return out


def chain_labels(u, v, t, E, thresh):
    u, v, t = (np.asarray(a, dtype=np.int64) for a in (u, v, t))
    n = len(u)
    rows, cols = [], []
    for start in range(0, n, _BLOCK):
        d = _rows(u, v, t, np.int64(E), start, min(n, start + _BLOCK))
        i, j = np.nonzero(d <= thresh)
        i = i + start
        keep = j > i
        rows.append(i[keep])
        cols.append(j[keep])
    rows = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.empty(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, comp = connected_components(graph, directed=False)
    least = np.full(comp.max() + 1 if n else 0, n, dtype=np.int64)
    np.minimum.at(least, comp, np.arange(n, dtype=np.int64))
    return least[comp]
