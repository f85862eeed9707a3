"""Undirected graphs on packed bitset rows, plus the SRG / triangle checks.

Vertices are 0..n-1; adjacency is an (n, w) uint64 array, bit j of row i
set iff ij is an edge.  Equality of graphs is labelled equality: same order
and identical adjacency bits (vertex labels are carried but not compared).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import (Degenerate, InternalInconsistency, MalformedInput,
                     NotRegular, NotSrg, OutOfRange, TooLarge)

GRAPH6_MAX = 10**6
TRIANGLE_SCAN_MAX = 5000


class SrgParams(NamedTuple):
    """Strongly regular graph parameters (v, k, lam, mu)."""

    v: int
    k: int
    lam: int
    mu: int

    def validate(self):
        """Standard feasibility identity k(k - lam - 1) = (v - k - 1) mu."""
        if self.k * (self.k - self.lam - 1) != (self.v - self.k - 1) * self.mu:
            raise InternalInconsistency(f"infeasible SRG parameters {self}")
        return self

    def __str__(self):
        return f"({self.v}, {self.k}, {self.lam}, {self.mu})"


@dataclass(frozen=True)
class TriangleSpectrum:
    """Histogram: common-neighbour count of a triangle -> number of triangles."""

    counts: tuple  # sorted tuple of (value, multiplicity)

    @classmethod
    def from_hist(cls, hist):
        nz = [(int(c), int(m)) for c, m in enumerate(hist) if m]
        return cls(counts=tuple(nz))

    @property
    def support(self):
        return tuple(c for c, _ in self.counts)

    def as_dict(self):
        return dict(self.counts)

    def total(self):
        return sum(m for _, m in self.counts)

    def __str__(self):
        inner = ", ".join(f"{c}: {m}" for c, m in self.counts)
        return "{" + inner + "}"


def _pack_bool(mat):
    n = mat.shape[0]
    w = max(1, (n + 63) // 64)
    padded = np.zeros((n, w * 64), dtype=np.uint8)
    padded[:, :n] = mat
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed.view(np.uint64))


class Graph:
    """Immutable-by-convention undirected graph over packed uint64 rows."""

    def __init__(self, adj, n, labels=None, _trusted=False):
        adj = np.ascontiguousarray(adj, dtype=np.uint64)
        self.n = int(n)
        self.words = adj.shape[1]
        self.adj = adj
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label count != vertex count")
        self._rows_int = None
        if not _trusted:
            self._validate()

    # ── construction ──────────────────────────────────────────────────

    @classmethod
    def from_bool_matrix(cls, mat, labels=None):
        mat = np.asarray(mat, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if mat.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(mat, mat.T):
            raise ValueError("adjacency matrix must be symmetric")
        return cls(_pack_bool(mat), mat.shape[0], labels=labels, _trusted=True)

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        mat = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise OutOfRange(f"self-loop at {u}")
            mat[u, v] = mat[v, u] = True
        return cls(_pack_bool(mat), n, labels=labels, _trusted=True)

    def _validate(self):
        w = max(1, (self.n + 63) // 64)
        if self.adj.shape != (self.n, w):
            raise ValueError("packed adjacency has wrong shape")
        mat = self.to_bool_matrix()
        if mat.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(mat, mat.T):
            raise ValueError("adjacency matrix must be symmetric")
        tail = np.unpackbits(self.adj.view(np.uint8), axis=1, bitorder="little")[:, self.n:]
        if tail.any():
            raise ValueError("padding bits must be zero")

    def to_bool_matrix(self):
        bits = np.unpackbits(self.adj.view(np.uint8), axis=1, bitorder="little")
        return bits[:, :self.n].astype(bool)

    # ── basic queries ─────────────────────────────────────────────────

    def rows_int(self):
        if self._rows_int is None:
            data = self.adj.tobytes()
            stride = self.words * 8
            self._rows_int = [int.from_bytes(data[i * stride:(i + 1) * stride], "little")
                              for i in range(self.n)]
        return self._rows_int

    def has_edge(self, u, v):
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.adj[u, v >> 6] >> (v & 63)) & 1)

    def neighbors(self, u):
        self._check_vertex(u)
        row = self.rows_int()[u]
        out = []
        while row:
            b = (row & -row).bit_length() - 1
            out.append(b)
            row &= row - 1
        return tuple(out)

    def degrees(self):
        return kernels.row_popcounts(self.adj)

    def _check_vertex(self, u):
        if not (isinstance(u, (int, np.integer)) and 0 <= u < self.n):
            raise OutOfRange(f"vertex {u} outside 0..{self.n - 1}")

    def num_edges(self):
        return int(self.degrees().sum()) // 2

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges()})"

    # ── the heavy checks (kernel-backed) ──────────────────────────────

    def srg_check(self, threads=None) -> SrgParams:
        """Exhaustive strong-regularity check; returns (v, k, lam, mu)."""
        res = kernels.srg_scan(self.adj, threads=threads)
        tag = res[0]
        if tag == "ok":
            _, k, lam, mu = res
            return SrgParams(self.n, k, lam, mu).validate()
        if tag == "not_regular":
            _, i, j = res
            degs = self.degrees()
            raise NotRegular(
                f"degrees differ: deg({i}) = {int(degs[i])}, deg({j}) = {int(degs[j])}",
                witness=(i, j), got=(int(degs[i]), int(degs[j])))
        if tag == "empty":
            raise Degenerate("graph has no adjacent pair: lambda undefined")
        if tag == "complete":
            raise Degenerate("graph has no non-adjacent pair: mu undefined")
        kind, i, j, got, want = res
        raise NotSrg(
            f"{kind} mismatch at pair ({i}, {j}): {got} common neighbours, expected {want}",
            witness=(i, j), got=got, expected=want)

    def common_neighbors(self, vs) -> int:
        vs = [int(v) for v in vs]
        if not vs:
            raise OutOfRange("need at least one vertex")
        if len(set(vs)) != len(vs):
            raise OutOfRange(f"vertices must be distinct: {vs}")
        for v in vs:
            self._check_vertex(v)
        rows = self.rows_int()
        acc = rows[vs[0]]
        for v in vs[1:]:
            acc &= rows[v]
        return acc.bit_count()

    def triangle_spectrum(self, threads=None) -> TriangleSpectrum:
        if self.n > TRIANGLE_SCAN_MAX:
            raise TooLarge(
                f"triangle scan limited to n <= {TRIANGLE_SCAN_MAX}, got {self.n}")
        hist = kernels.triangle_spectrum_counts(self.adj, threads=threads)
        return TriangleSpectrum.from_hist(hist)


def graphs_equal(g, h) -> bool:
    return g == h


def degree_sequence(g):
    """Degrees sorted non-increasing."""
    return tuple(sorted((int(d) for d in g.degrees()), reverse=True))


def srg_check(g, threads=None) -> SrgParams:
    return g.srg_check(threads=threads)


def common_neighbors(g, vs) -> int:
    return g.common_neighbors(vs)


def triangle_spectrum(g, threads=None) -> TriangleSpectrum:
    return g.triangle_spectrum(threads=threads)


# ── graph6 (bit-exact) ─────────────────────────────────────────────────────

def _g6_encode_n(n):
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in range(30, -1, -6)])


def graph6_write(g: Graph) -> str:
    """Canonical graph6 string: upper triangle, column-major, 6-bit groups."""
    if g.n > GRAPH6_MAX:
        raise TooLarge(f"graph6 writer limited to n <= {GRAPH6_MAX}")
    mat = g.to_bool_matrix()
    bits = []
    for j in range(1, g.n):
        bits.extend(mat[:j, j])
    out = bytearray(_g6_encode_n(g.n))
    for i in range(0, len(bits), 6):
        chunk = bits[i:i + 6]
        val = 0
        for b in chunk:
            val = (val << 1) | int(b)
        val <<= 6 - len(chunk)
        out.append(val + 63)
    return out.decode("ascii")


def graph6_read(s: str) -> Graph:
    """Inverse of graph6_write; raises MalformedInput on any deviation."""
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedInput("empty graph6 string")
    data = s.encode("ascii", errors="replace")
    if any(b < 63 or b > 126 for b in data):
        raise MalformedInput("graph6 bytes must be in 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise MalformedInput("truncated graph6 order")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise MalformedInput("truncated graph6 order")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        pos = 8
    if n > GRAPH6_MAX:
        raise TooLarge(f"graph6 reader limited to n <= {GRAPH6_MAX}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise MalformedInput(
            f"graph6 body has {len(body)} bytes, expected {need} for n = {n}")
    bits = np.zeros(need * 6, dtype=bool)
    for idx, b in enumerate(body):
        val = b - 63
        for t in range(6):
            bits[idx * 6 + t] = (val >> (5 - t)) & 1
    if bits[nbits:].any():
        raise MalformedInput("graph6 padding bits must be zero")
    mat = np.zeros((n, n), dtype=bool)
    k = 0
    for j in range(1, n):
        mat[:j, j] = bits[k:k + j]
        k += j
    mat |= mat.T
    return Graph.from_bool_matrix(mat)


# ── DIMACS (write-only) ────────────────────────────────────────────────────

def dimacs_write(g: Graph) -> str:
    """DIMACS edge format, vertices 1-indexed, each edge once with u < v."""
    lines = [f"p edge {g.n} {g.num_edges()}"]
    mat = g.to_bool_matrix()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if mat[u, v]:
                lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
