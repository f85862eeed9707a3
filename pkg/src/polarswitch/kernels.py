"""Backend dispatch for the bitset scan kernels.

The compiled extension is preferred when importable; POLARSWITCH_PURE=1
forces the pure-Python fallback.  srg_scan / triangle_spectrum_counts can
fan the scan out over a thread pool: the compiled kernels release the GIL,
so threads > 1 gives real parallelism there, while the fallback runs the
chunks sequentially-ish under the GIL (still correct, little speedup).
Results are independent of the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

import numpy as np

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_DEFAULT = _kernels_py if os.environ.get("POLARSWITCH_PURE") == "1" else (_ckernels or _kernels_py)
_FORCED = None


def available_backends():
    out = [("python", _kernels_py)]
    if _ckernels is not None:
        out.insert(0, ("c", _ckernels))
    return out


def active_backend() -> str:
    return (_FORCED or _DEFAULT).BACKEND


@contextmanager
def forced_backend(name):
    """Pin the backend by name ('c' or 'python'); test hook."""
    global _FORCED
    table = dict(available_backends())
    if name not in table:
        raise ValueError(f"backend {name!r} not available")
    prev = _FORCED
    _FORCED = table[name]
    try:
        yield
    finally:
        _FORCED = prev


def _impl():
    return _FORCED or _DEFAULT


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("POLARSWITCH_THREADS", "1")))
    except ValueError:
        return 1


_THREADS_OVERRIDE = None


def set_default_threads(n):
    """Process-wide worker cap used when an operation gets threads=None."""
    global _THREADS_OVERRIDE
    _THREADS_OVERRIDE = max(1, int(n)) if n is not None else None


def resolve_threads(threads) -> int:
    if threads is not None:
        return max(1, int(threads))
    if _THREADS_OVERRIDE is not None:
        return _THREADS_OVERRIDE
    return default_threads()


def _chunk_rows(n, parts):
    """Split rows 0..n-1 into ranges with roughly equal pair counts."""
    parts = min(parts, max(1, n))
    total = n * (n - 1) // 2
    bounds, done, start = [], 0, 0
    for p in range(parts):
        goal = total * (p + 1) // parts
        end = start
        while end < n and done < goal:
            done += n - end - 1
            end += 1
        if end > start:
            bounds.append((start, end))
        start = end
    if start < n:
        bounds.append((start, n))
    return bounds or [(0, n)]


def row_popcounts(adj):
    return _impl().row_popcounts(adj)


def srg_scan(adj, threads=None):
    """Classify a packed adjacency matrix.

    Returns one of:
      ("ok", k, lam, mu)
      ("not_regular", i, j)        -- two vertices of unequal degree
      ("empty",) / ("complete",)   -- lambda (resp. mu) undefined
      ("lambda", i, j, got, want) / ("mu", i, j, got, want)
    """
    impl = _impl()
    n = adj.shape[0]
    degs = impl.row_popcounts(adj)
    if n and degs.max() != degs.min():
        k0 = int(degs[0])
        j = int(np.nonzero(degs != k0)[0][0])
        return ("not_regular", 0, j)
    k = int(degs[0]) if n else 0
    if n < 2 or k == 0:
        return ("empty",)
    if k == n - 1:
        return ("complete",)
    # reference lambda from the first adjacent pair, mu from the first
    # non-adjacent one; the full scan then checks every pair against them.
    lam = mu = None
    rows = _kernels_py._rows_as_ints(adj)
    for i in range(n):
        hi = rows[i] >> (i + 1)
        if lam is None and hi:
            j = (hi & -hi).bit_length() + i
            lam = (rows[i] & rows[j]).bit_count()
        if mu is None:
            nonadj = ~(rows[i] | (1 << i)) & ((1 << n) - 1)
            nonadj >>= i + 1
            if nonadj:
                j = (nonadj & -nonadj).bit_length() + i
                mu = (rows[i] & rows[j]).bit_count()
        if lam is not None and mu is not None:
            break
    nthreads = resolve_threads(threads)
    if nthreads == 1:
        status, i, j, got = impl.check_pairs(adj, 0, n, lam, mu)
        results = [(status, i, j, got)]
    else:
        chunks = _chunk_rows(n, nthreads)
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(
                lambda c: impl.check_pairs(adj, c[0], c[1], lam, mu), chunks))
    for status, i, j, got in results:
        if status == 2:
            return ("lambda", i, j, got, lam)
        if status == 3:
            return ("mu", i, j, got, mu)
    return ("ok", k, lam, mu)


def triangle_spectrum_counts(adj, threads=None):
    """Histogram array h where h[c] = number of triangles with c common neighbours."""
    impl = _impl()
    n = adj.shape[0]
    nthreads = resolve_threads(threads)
    if nthreads == 1:
        return impl.triangle_hist(adj, 0, n)
    chunks = _chunk_rows(n, nthreads)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(lambda c: impl.triangle_hist(adj, c[0], c[1]), chunks))
    return np.sum(parts, axis=0)


def find_triple(adj, target):
    return _impl().find_triple(adj, int(target))
