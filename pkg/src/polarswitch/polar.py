"""Finite classical polar spaces over GF(q).

Six families, each realised by a fixed standard form on GF(q)^n:

* symplectic      Sp(2d, q)    alternating  x1 y2 - x2 y1 + ...
* hyperbolic      O+(2d, q)    quadratic    x1 x2 + x3 x4 + ...
* parabolic       O(2d+1, q)   quadratic    x1^2 + x2 x3 + ...
* elliptic        O-(2d+2, q)  quadratic    f(x1, x2) + x3 x4 + ...
* hermitian even  U(2d, q)     hermitian    sum x_i conj(y_i), q square
* hermitian odd   U(2d+1, q)   hermitian    sum x_i conj(y_i), q square

For the elliptic form f(x1, x2) = x1^2 + c x1 x2 + c' x2^2 the pair
(c, c') is the lexicographically smallest (by element code) making f
anisotropic on GF(q)^2.

Points are projective points (see linalg) with isotropic representatives;
two distinct points are collinear when the sesquilinear form between them
vanishes.  For quadratic forms that is the polarisation
B(x, y) = Q(x+y) - Q(x) - Q(y), which works uniformly in all
characteristics, including even ones where B degenerates on a radical.

Vertex order of the collinearity graph is the lexicographic order of the
normalised representatives, so graphs are reproducible across runs.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import (
    AmbientMismatch,
    BadDimension,
    InternalInconsistency,
    NotIsotropic,
    NotSquareOrder,
    OutOfRange,
    TooLarge,
)
from .gf import Field, field_from_order
from .graph import Graph, SrgParams
from .linalg import ProjectivePoint, Subspace

BUILD_LIMIT = 10**6  # max number of points we agree to enumerate
GRAPH_LIMIT = 50_000  # max vertices for a materialised collinearity graph


class PolarKind(Enum):
    SYMPLECTIC = "sp"
    HYPERBOLIC = "o-plus"
    PARABOLIC = "o-odd"
    ELLIPTIC = "o-minus"
    HERMITIAN_EVEN = "u-even"
    HERMITIAN_ODD = "u-odd"

    @property
    def is_orthogonal(self):
        return self in (PolarKind.HYPERBOLIC, PolarKind.PARABOLIC,
                        PolarKind.ELLIPTIC)

    @property
    def is_hermitian(self):
        return self in (PolarKind.HERMITIAN_EVEN, PolarKind.HERMITIAN_ODD)

    @property
    def e2(self):
        """Twice the family parameter e, with q^e generators-per-next-point."""
        return {
            PolarKind.HYPERBOLIC: 0,
            PolarKind.HERMITIAN_EVEN: 1,
            PolarKind.SYMPLECTIC: 2,
            PolarKind.PARABOLIC: 2,
            PolarKind.HERMITIAN_ODD: 3,
            PolarKind.ELLIPTIC: 4,
        }[self]

    def ambient_dim(self, d):
        return {
            PolarKind.SYMPLECTIC: 2 * d,
            PolarKind.HYPERBOLIC: 2 * d,
            PolarKind.PARABOLIC: 2 * d + 1,
            PolarKind.ELLIPTIC: 2 * d + 2,
            PolarKind.HERMITIAN_EVEN: 2 * d,
            PolarKind.HERMITIAN_ODD: 2 * d + 1,
        }[self]


_KIND_ALIASES = {k.value: k for k in PolarKind}


def _anisotropic_pair(field: Field):
    """Lex-least (c, c') with t^2 + c t + c' having no root in GF(q)."""
    q = field.q
    for c in range(q):
        for cp in range(q):
            ok = True
            for t in range(q):
                val = field.add_c(field.add_c(field.mul_c(t, t),
                                              field.mul_c(c, t)), cp)
                if val == 0:
                    ok = False
                    break
            if ok:
                return c, cp
    raise InternalInconsistency("no anisotropic binary quadratic over "
                                f"GF({q})")  # pragma: no cover


class PolarSpace:
    """A polar space of rank d: forms, points, perps, generators, graph."""

    def __init__(self, kind: PolarKind, d: int, q: int):
        if d < 1:
            raise BadDimension(f"rank must be at least 1, got {d}")
        field = field_from_order(q)
        if kind.is_hermitian and field.k % 2:
            raise NotSquareOrder(
                f"hermitian spaces need a square order, got q = {q}")
        self.kind = kind
        self.d = int(d)
        self.q = int(q)
        self.field = field
        self.n = kind.ambient_dim(d)
        self.e2 = kind.e2
        if self.e2 % 2 == 0:
            self.q_e = q ** (self.e2 // 2)
        else:
            r = math.isqrt(q)
            assert r * r == q
            self.q_e = r ** self.e2
        self.hermitian = kind.is_hermitian
        self._quad_terms = self._build_quad()          # [(i, j, coeff)] or None
        self.gram = self._build_gram()                 # n x n uint16
        self._gram_t = np.ascontiguousarray(self.gram.T)
        self._gram_entries = [(int(i), int(j), int(self.gram[i, j]))
                              for i, j in zip(*np.nonzero(self.gram))]
        self._points = None
        self._index = None
        self._graph = None

    # ── construction of the standard forms ────────────────────────────

    def _build_quad(self):
        n, kind = self.n, self.kind
        if kind is PolarKind.HYPERBOLIC:
            return [(2 * i, 2 * i + 1, 1) for i in range(self.d)]
        if kind is PolarKind.PARABOLIC:
            return [(0, 0, 1)] + [(2 * i + 1, 2 * i + 2, 1)
                                  for i in range(self.d)]
        if kind is PolarKind.ELLIPTIC:
            c, cp = _anisotropic_pair(self.field)
            terms = [(0, 0, 1)]
            if c:
                terms.append((0, 1, c))
            terms.append((1, 1, cp))
            terms += [(2 * i, 2 * i + 1, 1) for i in range(1, self.d + 1)]
            return terms
        return None

    def _build_gram(self):
        n, f = self.n, self.field
        g = np.zeros((n, n), dtype=np.uint16)
        if self.kind is PolarKind.SYMPLECTIC:
            neg1 = f.neg_c(1)
            for i in range(self.d):
                g[2 * i, 2 * i + 1] = 1
                g[2 * i + 1, 2 * i] = neg1
        elif self.hermitian:
            np.fill_diagonal(g, 1)
        else:
            # polarisation of the quadratic form: B = M + M^T
            for i, j, coeff in self._quad_terms:
                g[i, j] = f.add_c(int(g[i, j]), coeff)
                g[j, i] = f.add_c(int(g[j, i]), coeff)
        return g

    @property
    def name(self):
        fmt = {
            PolarKind.SYMPLECTIC: "Sp({n},{q})",
            PolarKind.HYPERBOLIC: "O+({n},{q})",
            PolarKind.PARABOLIC: "O({n},{q})",
            PolarKind.ELLIPTIC: "O-({n},{q})",
            PolarKind.HERMITIAN_EVEN: "U({n},{q})",
            PolarKind.HERMITIAN_ODD: "U({n},{q})",
        }[self.kind]
        return fmt.format(n=self.n, q=self.q)

    def __repr__(self):
        return f"PolarSpace({self.name}, rank={self.d})"

    # ── form evaluation ───────────────────────────────────────────────

    def quad_eval(self, v):
        """Value of the quadratic form at a code vector."""
        if self._quad_terms is None:
            raise OutOfRange(f"{self.name} carries no quadratic form")
        f = self.field
        row = linalg._clean_vector(f, v, self.n)
        acc = 0
        for i, j, coeff in self._quad_terms:
            acc = f.add_c(acc, f.mul_c(coeff, f.mul_c(row[i], row[j])))
        return acc

    def form_eval(self, x, y):
        """Sesquilinear form B(x, y) between two code vectors."""
        f = self.field
        xr = linalg._clean_vector(f, x, self.n)
        yr = linalg._clean_vector(f, y, self.n)
        if self.hermitian:
            yr = [f.conj_c(c) for c in yr]
        acc = 0
        for i, j, coeff in self._gram_entries:
            acc = f.add_c(acc, f.mul_c(xr[i], f.mul_c(coeff, yr[j])))
        return acc

    def is_isotropic_vector(self, v) -> bool:
        if self.kind is PolarKind.SYMPLECTIC:
            linalg._clean_vector(self.field, v, self.n)
            return True
        if self.hermitian:
            return self.form_eval(v, v) == 0
        return self.quad_eval(v) == 0

    def is_isotropic(self, s: Subspace) -> bool:
        """True when the whole subspace is singular for the form.

        Checking the basis suffices in every characteristic: quadratic
        values expand as Q(sum a_i b_i) = sum a_i^2 Q(b_i)
        + sum_{i<j} a_i a_j B(b_i, b_j), and sesquilinear values are
        bilinear in the basis.
        """
        self._check_ambient(s)
        basis = s.basis
        for i, b in enumerate(basis):
            if not self.is_isotropic_vector(b):
                return False
            start = i if self.hermitian else i + 1
            for j in range(start, len(basis)):
                if self.form_eval(b, basis[j]) != 0:
                    return False
        return True

    def _check_ambient(self, s: Subspace):
        if s.field is not self.field or s.n != self.n:
            raise AmbientMismatch(
                f"subspace lives in GF({s.field.q})^{s.n}, "
                f"space is GF({self.q})^{self.n}")

    # ── perps ─────────────────────────────────────────────────────────

    def perp(self, s) -> Subspace:
        """All x with B(x, b) = 0 for every b in s (s: Subspace or vector)."""
        if not isinstance(s, Subspace):
            s = Subspace.from_vectors(self.field, self.n, [s])
        self._check_ambient(s)
        if s.dim == 0:
            return Subspace.full(self.field, self.n)
        basis = s.matrix
        if self.hermitian:
            basis = linalg.conj_codes(self.field, basis)
        rows = linalg.mat_mul_codes(self.field, basis, self._gram_t)
        return linalg.nullspace(self.field, rows.tolist(), self.n)

    # ── point enumeration ─────────────────────────────────────────────

    def _form_values_rows(self, x):
        """Vectorised Q(x) (orthogonal) or B(x, x) (hermitian) per row."""
        t = self.field.tables()
        acc = np.zeros(len(x), dtype=np.uint16)
        if self.hermitian:
            for i in range(self.n):
                col = x[:, i]
                acc = t.add[acc, t.mul[col, t.conj[col]]]
            return acc
        for i, j, coeff in self._quad_terms:
            term = t.mul[x[:, i], x[:, j]]
            if coeff != 1:
                term = t.mul[term, coeff]
            acc = t.add[acc, term]
        return acc

    def isotropic_points(self):
        """All singular projective points, lexicographically sorted."""
        if self._points is not None:
            return self._points
        q, n = self.q, self.n
        if (q**n - 1) // (q - 1) > linalg.ENUM_LIMIT:
            raise TooLarge(f"projective space of {self.name} is beyond "
                           f"the enumeration guard")
        expected = self._num_points_rank(self.d)
        if expected > BUILD_LIMIT:
            raise TooLarge(f"{expected} points of {self.name} exceed the "
                           f"build guard {BUILD_LIMIT}")
        blocks = []
        for lead in range(n - 1, -1, -1):
            tail = n - lead - 1
            block = np.zeros((q**tail, n), dtype=np.uint16)
            block[:, lead] = 1
            if tail:
                codes = np.arange(q**tail)
                for t in range(tail):
                    block[:, lead + 1 + t] = (codes // q**(tail - 1 - t)) % q
            if self.kind is not PolarKind.SYMPLECTIC:
                block = block[self._form_values_rows(block) == 0]
            blocks.append(block)
        reps = np.vstack(blocks)
        if len(reps) != expected:
            raise InternalInconsistency(
                f"enumerated {len(reps)} points of {self.name} but the "
                f"counting formula gives {expected}")
        self._points = [ProjectivePoint(tuple(int(c) for c in row))
                        for row in reps]
        self._index = {p.rep: i for i, p in enumerate(self._points)}
        return self._points

    def point_index(self):
        """Map from point representative tuple to vertex number."""
        self.isotropic_points()
        return self._index

    # ── the collinearity graph ────────────────────────────────────────

    def collinearity_graph(self) -> Graph:
        """Graph on singular points, joined when the form vanishes.

        Works through the form values in row chunks, packing each chunk
        straight into uint64 rows, so only the bit-packed adjacency is
        ever held in full.  GRAPH_LIMIT keeps that allocation honest.
        """
        if self._graph is not None:
            return self._graph
        pts = self.isotropic_points()
        v = len(pts)
        if v > GRAPH_LIMIT:
            raise TooLarge(f"{v} vertices of {self.name} exceed the "
                           f"adjacency guard {GRAPH_LIMIT}")
        x = np.array([p.rep for p in pts], dtype=np.uint16)
        y = linalg.conj_codes(self.field, x) if self.hermitian else x
        m = linalg.mat_mul_codes(self.field, x, self.gram)
        yt = np.ascontiguousarray(y.T)
        words = max(1, (v + 63) // 64)
        adj = np.zeros((v, words), dtype=np.uint64)
        step = max(64, (1 << 24) // max(v, 1))
        for lo in range(0, v, step):
            hi = min(v, lo + step)
            bits = linalg.mat_mul_codes(self.field, m[lo:hi], yt) == 0
            rows = np.arange(hi - lo)
            if not bits[rows, rows + lo].all():
                raise InternalInconsistency(
                    "a singular point fails to be self-orthogonal")
            bits[rows, rows + lo] = False
            padded = np.zeros((hi - lo, words * 64), dtype=np.uint8)
            padded[:, :v] = bits
            packed = np.packbits(padded, axis=1, bitorder="little")
            adj[lo:hi] = packed.view(np.uint64)
        # the form is (conjugate-)symmetric, so the packed rows are too;
        # rerun the full checks where the dense unpack is still cheap
        labels = tuple(p.rep for p in pts)
        self._graph = Graph(adj, v, labels=labels, _trusted=v > 4096)
        return self._graph

    # ── generators ────────────────────────────────────────────────────

    def generators_through(self, w: Subspace):
        """All maximal singular subspaces containing the singular w."""
        self._check_ambient(w)
        if not self.is_isotropic(w):
            raise NotIsotropic("can only extend a singular subspace")
        if w.dim > self.d:
            raise BadDimension(f"dim {w.dim} exceeds the rank {self.d}")
        if w.dim == self.d:
            return [w]
        found = {}
        level = {w.key: w}
        while level:
            nxt = {}
            for sub in level.values():
                for pt in linalg.points_of(self.perp(sub)):
                    if sub.contains_vector(pt.rep):
                        continue
                    if not self.is_isotropic_vector(pt.rep):
                        continue
                    ext = Subspace.from_vectors(
                        self.field, self.n, list(sub.basis) + [pt.rep])
                    if ext.dim == self.d:
                        found.setdefault(ext.key, ext)
                    else:
                        nxt.setdefault(ext.key, ext)
            level = nxt
        return sorted(found.values(), key=lambda s: s.key)

    def all_generators(self):
        """Every maximal singular subspace (guarded, meant for small cases)."""
        if self.num_generators() * len(self.isotropic_points()) > 10**7:
            raise TooLarge(f"{self.num_generators()} generators of "
                           f"{self.name} exceed the enumeration guard")
        return self.generators_through(Subspace.zero(self.field, self.n))

    def num_generators(self) -> int:
        """Count of maximal singular subspaces: prod (1 + q^e q^i)."""
        out = 1
        for i in range(self.d):
            out *= 1 + self.q_e * self.q**i
        return out

    def canonical_base(self, dim=None) -> Subspace:
        """Greedy lex-least singular subspace of the given dimension."""
        if dim is None:
            dim = self.d - 1
        if not 0 <= dim <= self.d:
            raise BadDimension(f"dim {dim} outside 0..{self.d}")
        cur = Subspace.zero(self.field, self.n)
        for pt in self.isotropic_points():
            if cur.dim == dim:
                break
            if cur.contains_vector(pt.rep):
                continue
            if any(self.form_eval(pt.rep, b) != 0 for b in cur.basis):
                continue
            cur = Subspace.from_vectors(self.field, self.n,
                                        list(cur.basis) + [pt.rep])
        if cur.dim != dim:
            raise InternalInconsistency(
                f"greedy extension stalled at dim {cur.dim}")  # pragma: no cover
        return cur

    # ── parameter formulas ────────────────────────────────────────────

    def _bracket(self, m):
        return (self.q**m - 1) // (self.q - 1)

    def _num_points_rank(self, r):
        if r <= 0:
            return 0
        return (self.q**(r - 1) * self.q_e + 1) * self._bracket(r)

    def srg_params(self) -> SrgParams:
        """The strongly regular parameter set of the collinearity graph."""
        if self.d < 2:
            raise BadDimension("rank at least 2 is needed for adjacency "
                               "parameters")
        q, d, qe = self.q, self.d, self.q_e
        v0 = (q**(d - 1) * qe + 1) * self._bracket(d)
        k0 = q * (q**(d - 2) * qe + 1) * self._bracket(d - 1)
        mu0 = (q**(d - 2) * qe + 1) * self._bracket(d - 1)
        lam0 = q - 1
        if d >= 3:  # for d == 2 the extra term carries a zero factor
            lam0 += q * q * (q**(d - 3) * qe + 1) * self._bracket(d - 2)
        return SrgParams(v0, k0, lam0, mu0)

    def triangle_codegrees(self):
        """Common-neighbour counts seen over triangles, as a sorted tuple.

        A triangle spans either a singular line (the three points are on
        one line of the space) or a singular plane; in both cases the
        common neighbours are the remaining singular points of the perp.
        """
        if self.d < 2:
            raise BadDimension("rank at least 2 is needed for triangles")
        q = self.q
        vals = {self._bracket(2) + q * q * self._num_points_rank(self.d - 2)
                - 3}
        if self.d >= 3:
            vals.add(self._bracket(3)
                     + q**3 * self._num_points_rank(self.d - 3) - 3)
        return tuple(sorted(vals))


class QuotientSummary(NamedTuple):
    kind: PolarKind
    q: int
    rank: int
    num_points: int


def quotient_polar(space: PolarSpace, w: Subspace) -> QuotientSummary:
    """Residual polar structure above a singular subspace.

    Counts the singular extensions of w by one dimension; for a singular
    w of dimension s these are the points of a rank d-s space of the
    same family.
    """
    space._check_ambient(w)
    if not space.is_isotropic(w):
        raise NotIsotropic("the quotient needs a singular subspace")
    seen = set()
    for pt in linalg.points_of(space.perp(w)):
        if w.contains_vector(pt.rep) or not space.is_isotropic_vector(pt.rep):
            continue
        ext = Subspace.from_vectors(space.field, space.n,
                                    list(w.basis) + [pt.rep])
        seen.add(ext.key)
    return QuotientSummary(space.kind, space.q, space.d - w.dim, len(seen))


def polar_create(kind, d: int, q: int) -> PolarSpace:
    """Make a polar space; kind is a PolarKind or one of its names
    ("sp", "o-plus", "o-odd", "o-minus", "u-even", "u-odd")."""
    if isinstance(kind, str):
        try:
            kind = _KIND_ALIASES[kind]
        except KeyError:
            raise OutOfRange(
                f"unknown family {kind!r}; pick one of "
                f"{sorted(_KIND_ALIASES)}") from None
    return PolarSpace(kind, d, q)


# module-level conveniences mirroring the methods

def quad_eval(space, v):
    return space.quad_eval(v)


def form_eval(space, x, y):
    return space.form_eval(x, y)


def is_isotropic(space, s):
    return space.is_isotropic(s)


def perp(space, s):
    return space.perp(s)


def isotropic_points(space):
    return space.isotropic_points()


def collinearity_graph(space):
    return space.collinearity_graph()


def generators_through(space, w):
    return space.generators_through(w)


def srg_params_formula(space) -> SrgParams:
    return space.srg_params()


def expected_triangle_codegrees(space):
    return space.triangle_codegrees()
