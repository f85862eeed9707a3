"""Pure-Python twins of the compiled bitset kernels.

Same call signatures and semantics as _ckernels; the pair scan leans on
numpy (vectorised AND + popcount per row), the triangle scan on Python
big-int bitsets.  Used when the extension is absent or forced off.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

if hasattr(np, "bitwise_count"):
    def _popcount_rows(a):
        return np.bitwise_count(a).sum(axis=1, dtype=np.int64)
else:  # numpy < 2.0
    _POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)

    def _popcount_rows(a):
        return _POP8[a.view(np.uint8)].sum(axis=1)


def _rows_as_ints(adj):
    data = np.ascontiguousarray(adj).tobytes()
    stride = adj.shape[1] * 8
    return [int.from_bytes(data[i * stride:(i + 1) * stride], "little")
            for i in range(adj.shape[0])]


def row_popcounts(adj):
    """Degree of every vertex."""
    return _popcount_rows(adj)


def _unpack_row(adj, i, n):
    bits = np.unpackbits(adj[i].view(np.uint8), bitorder="little")
    return bits[:n].astype(bool)


def check_pairs(adj, i0, i1, lam, mu):
    """Verify |N(i) & N(j)| over all pairs i0 <= i < i1, i < j < n.

    Returns (0, -1, -1, -1) on success, else (2, i, j, got) for a lambda
    mismatch or (3, i, j, got) for a mu mismatch, first in (i, j) order.
    """
    n = adj.shape[0]
    for i in range(i0, i1):
        if i + 1 >= n:
            break
        tail = adj[i + 1:]
        counts = _popcount_rows(tail & adj[i])
        adjacent = _unpack_row(adj, i, n)[i + 1:]
        want = np.where(adjacent, lam, mu)
        bad = np.nonzero(counts != want)[0]
        if bad.size:
            j = int(bad[0]) + i + 1
            got = int(counts[bad[0]])
            return (2 if adjacent[bad[0]] else 3), i, j, got
    return 0, -1, -1, -1


def triangle_hist(adj, i0, i1):
    """Histogram of |N(x) & N(y) & N(z)| over triangles x < y < z, x in [i0, i1)."""
    n = adj.shape[0]
    rows = _rows_as_ints(adj)
    hist = [0] * (n + 1)
    for i in range(i0, i1):
        mi = rows[i] >> (i + 1)
        j = i + 1
        while mi:
            shift = (mi & -mi).bit_length() - 1
            j += shift
            mi >>= shift + 1
            t = rows[i] & rows[j]
            mk = t >> (j + 1)
            k = j + 1
            while mk:
                s2 = (mk & -mk).bit_length() - 1
                k += s2
                mk >>= s2 + 1
                hist[(t & rows[k]).bit_count()] += 1
                k += 1
            j += 1
    return np.array(hist, dtype=np.int64)


def find_triple(adj, target):
    """First triangle (x < y < z) whose common-neighbour count equals target."""
    n = adj.shape[0]
    rows = _rows_as_ints(adj)
    for i in range(n):
        mi = rows[i] >> (i + 1)
        j = i + 1
        while mi:
            shift = (mi & -mi).bit_length() - 1
            j += shift
            mi >>= shift + 1
            t = rows[i] & rows[j]
            mk = t >> (j + 1)
            k = j + 1
            while mk:
                s2 = (mk & -mk).bit_length() - 1
                k += s2
                mk >>= s2 + 1
                if (t & rows[k]).bit_count() == target:
                    return i, j, k
                k += 1
            j += 1
    return None
