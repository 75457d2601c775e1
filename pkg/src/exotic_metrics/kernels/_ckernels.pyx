# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled all-pairs sweeps over scaled-integer cobweb points.

A point is three int64 values ``(u, v, t)``: a vortex has ``u == v`` and
``t == 0``; an inner point has ``u != v`` and ``0 < t < E``.  ``E`` is the
thread length in the same integer units, so every distance is exact.
"""
import numpy as np
from libc.stdint cimport int64_t

ctypedef const int64_t[::1] cvec


cdef inline int64_t _dist(int64_t u1, int64_t v1, int64_t t1,
                          int64_t u2, int64_t v2, int64_t t2,
                          int64_t E) noexcept nogil:
    cdef int64_t best, c, d
    cdef int64_t w1[2]
    cdef int64_t c1[2]
    cdef int64_t w2[2]
    cdef int64_t c2[2]
    cdef int n1, n2, i, j
    if u1 == u2 and v1 == v2 and t1 == t2:
        return 0
    best = 4 * E
    if u1 != v1 and u1 == u2 and v1 == v2:
        d = t1 - t2
        best = d if d >= 0 else -d
    w1[0] = u1
    c1[0] = t1
    n1 = 1
    if u1 != v1:
        w1[1] = v1
        c1[1] = E - t1
        n1 = 2
    w2[0] = u2
    c2[0] = t2
    n2 = 1
    if u2 != v2:
        w2[1] = v2
        c2[1] = E - t2
        n2 = 2
    for i in range(n1):
        for j in range(n2):
            c = c1[i] + c2[j]
            if w1[i] != w2[j]:
                c += E
            if c < best:
                best = c
    return best


def batch(cvec u1, cvec v1, cvec t1, cvec u2, cvec v2, cvec t2, int64_t E):
    cdef Py_ssize_t n = u1.shape[0], k
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for k in range(n):
            o[k] = _dist(u1[k], v1[k], t1[k], u2[k], v2[k], t2[k], E)
    return out


def pairwise(cvec u, cvec v, cvec t, int64_t E):
    cdef Py_ssize_t n = u.shape[0], i, j
    out = np.empty((n, n), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef int64_t d
    with nogil:
        for i in range(n):
            o[i, i] = 0
            for j in range(i + 1, n):
                d = _dist(u[i], v[i], t[i], u[j], v[j], t[j], E)
                o[i, j] = d
                o[j, i] = d
    return out


cdef inline Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t i) noexcept nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def chain_labels(cvec u, cvec v, cvec t, int64_t E, int64_t thresh):
    """Component label (least member index) of every point under d <= thresh."""
    cdef Py_ssize_t n = u.shape[0], i, j, ri, rj
    parent_arr = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if _dist(u[i], v[i], t[i], u[j], v[j], t[j], E) <= thresh:
                    ri = _find(parent, i)
                    rj = _find(parent, j)
                    if ri < rj:
                        parent[rj] = ri
                    elif rj < ri:
                        parent[ri] = rj
        for i in range(n):
            parent[i] = _find(parent, i)
    return parent_arr.astype(np.int64)
