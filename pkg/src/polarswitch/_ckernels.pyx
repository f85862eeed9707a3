# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset scan kernels.

Adjacency is a C-contiguous (n, w) uint64 array; bit j of row i is
(adj[i, j >> 6] >> (j & 63)) & 1.  Every function here has a pure-Python
twin in _kernels_py with identical semantics; the dispatcher in kernels.py
picks one at import time.
"""

from libc.stdlib cimport free, malloc
from libc.stdint cimport int64_t, uint64_t

import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


BACKEND = "c"


def row_popcounts(const uint64_t[:, ::1] adj):
    """Degree of every vertex."""
    cdef Py_ssize_t n = adj.shape[0], w = adj.shape[1]
    cdef Py_ssize_t i, t
    cdef long long c
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for i in range(n):
            c = 0
            for t in range(w):
                c += __builtin_popcountll(adj[i, t])
            o[i] = c
    return out


def check_pairs(const uint64_t[:, ::1] adj, Py_ssize_t i0, Py_ssize_t i1,
                long lam, long mu):
    """Verify |N(i) & N(j)| over all pairs i0 <= i < i1, i < j < n.

    Returns (0, -1, -1, -1) if every pair matches lam (adjacent) / mu
    (non-adjacent), else (2, i, j, got) for a lambda mismatch or
    (3, i, j, got) for a mu mismatch, first mismatch in (i, j) order.
    """
    cdef Py_ssize_t n = adj.shape[0], w = adj.shape[1]
    cdef Py_ssize_t i, j, t
    cdef long c, want
    cdef int adjacent
    cdef int status = 0
    cdef Py_ssize_t wi = -1, wj = -1
    cdef long got = -1
    with nogil:
        for i in range(i0, i1):
            for j in range(i + 1, n):
                c = 0
                for t in range(w):
                    c += __builtin_popcountll(adj[i, t] & adj[j, t])
                adjacent = (adj[i, j >> 6] >> (j & 63)) & 1
                want = lam if adjacent else mu
                if c != want:
                    status = 2 if adjacent else 3
                    wi = i
                    wj = j
                    got = c
                    break
            if status:
                break
    return status, wi, wj, got


def triangle_hist(const uint64_t[:, ::1] adj, Py_ssize_t i0, Py_ssize_t i1):
    """Histogram of |N(x) & N(y) & N(z)| over triangles x < y < z, x in [i0, i1)."""
    cdef Py_ssize_t n = adj.shape[0], w = adj.shape[1]
    cdef Py_ssize_t i, j, k, t, wj, wk
    cdef uint64_t mj, mk
    cdef long c
    hist = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] h = hist
    cdef uint64_t *buf = <uint64_t *> malloc(w * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(i0, i1):
                for wj in range(i >> 6, w):
                    mj = adj[i, wj]
                    if wj == (i >> 6):
                        # keep only neighbours j > i
                        mj &= ~((<uint64_t> 2 << (i & 63)) - 1)
                    while mj:
                        j = (wj << 6) + __builtin_ctzll(mj)
                        mj &= mj - 1
                        for t in range(w):
                            buf[t] = adj[i, t] & adj[j, t]
                        for wk in range(j >> 6, w):
                            mk = buf[wk]
                            if wk == (j >> 6):
                                mk &= ~((<uint64_t> 2 << (j & 63)) - 1)
                            while mk:
                                k = (wk << 6) + __builtin_ctzll(mk)
                                mk &= mk - 1
                                c = 0
                                for t in range(w):
                                    c += __builtin_popcountll(buf[t] & adj[k, t])
                                h[c] += 1
    finally:
        free(buf)
    return hist


def find_triple(const uint64_t[:, ::1] adj, long target):
    """First triangle (x < y < z) whose common-neighbour count equals target."""
    cdef Py_ssize_t n = adj.shape[0], w = adj.shape[1]
    cdef Py_ssize_t i, j, k, t, wj, wk
    cdef uint64_t mj, mk
    cdef long c
    cdef Py_ssize_t ri = -1, rj = -1, rk = -1
    cdef uint64_t *buf = <uint64_t *> malloc(w * sizeof(uint64_t))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                if ri >= 0:
                    break
                for wj in range(i >> 6, w):
                    if ri >= 0:
                        break
                    mj = adj[i, wj]
                    if wj == (i >> 6):
                        mj &= ~((<uint64_t> 2 << (i & 63)) - 1)
                    while mj:
                        j = (wj << 6) + __builtin_ctzll(mj)
                        mj &= mj - 1
                        for t in range(w):
                            buf[t] = adj[i, t] & adj[j, t]
                        for wk in range(j >> 6, w):
                            mk = buf[wk]
                            if wk == (j >> 6):
                                mk &= ~((<uint64_t> 2 << (j & 63)) - 1)
                            while mk:
                                k = (wk << 6) + __builtin_ctzll(mk)
                                mk &= mk - 1
                                c = 0
                                for t in range(w):
                                    c += __builtin_popcountll(buf[t] & adj[k, t])
                                if c == target:
                                    ri = i
                                    rj = j
                                    rk = k
                                    break
                            if ri >= 0:
                                break
                        if ri >= 0:
                            break
    finally:
        free(buf)
    if ri < 0:
        return None
    return int(ri), int(rj), int(rk)
