"""Linear algebra over GF(q): canonical subspaces, enumeration, counting.

Vectors and matrices hold integer element codes (see gf).  A Subspace is
identified with the reduced-row-echelon basis of its row space, so equal
subspaces compare equal and sort deterministically.  Projective points are
normalised so that the first nonzero coordinate is 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import AmbientMismatch, DimensionMismatch, OutOfRange, TooLarge
from .gf import Field

ENUM_LIMIT = 10**7  # guard for subspace / point enumerations


def _clean_vector(field, v, n):
    row = [int(c) for c in v]
    if len(row) != n:
        raise DimensionMismatch(f"vector of length {len(row)}, ambient is {n}")
    for c in row:
        if not 0 <= c < field.q:
            raise OutOfRange(f"code {c} outside GF({field.q})")
    return row


def rref(field: Field, rows, ncols):
    """Reduced row echelon form over GF(q).  Returns (rows, pivot_columns)."""
    work = [_clean_vector(field, r, ncols) for r in rows]
    pivots = []
    lead = 0
    for col in range(ncols):
        piv = None
        for r in range(lead, len(work)):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[lead], work[piv] = work[piv], work[lead]
        head = work[lead][col]
        if head != 1:
            inv = field.inv_c(head)
            work[lead] = [field.mul_c(inv, v) for v in work[lead]]
        for r in range(len(work)):
            if r != lead and work[r][col]:
                f = work[r][col]
                work[r] = [field.sub_c(a, field.mul_c(f, b))
                           for a, b in zip(work[r], work[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(work):
            break
    return [tuple(r) for r in work[:lead]], tuple(pivots)


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """A projective point: the unique representative with first nonzero = 1."""

    rep: tuple

    def __repr__(self):
        return "Pt" + str(self.rep)


def projective_point(field: Field, v) -> ProjectivePoint:
    n = len(v)
    row = _clean_vector(field, v, n)
    lead = next((i for i, c in enumerate(row) if c), None)
    if lead is None:
        raise OutOfRange("the zero vector is not a projective point")
    head = row[lead]
    if head != 1:
        inv = field.inv_c(head)
        row = [field.mul_c(inv, c) for c in row]
    return ProjectivePoint(tuple(row))


class Subspace:
    """Row space of a canonical RREF basis over GF(q)."""

    __slots__ = ("field", "n", "basis", "pivots", "_mat")

    def __init__(self, field, n, basis, pivots):
        self.field = field
        self.n = n
        self.basis = basis    # tuple of tuples, RREF, no zero rows
        self.pivots = pivots
        self._mat = None

    @classmethod
    def from_vectors(cls, field, n, vectors):
        basis, pivots = rref(field, vectors, n)
        return cls(field, int(n), tuple(basis), pivots)

    @classmethod
    def zero(cls, field, n):
        return cls(field, int(n), (), ())

    @classmethod
    def full(cls, field, n):
        eye = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return cls(field, int(n), eye, tuple(range(n)))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def key(self):
        return (self.dim, tuple(c for row in self.basis for c in row))

    @property
    def matrix(self):
        if self._mat is None:
            arr = np.array(self.basis, dtype=np.uint16) if self.basis \
                else np.zeros((0, self.n), dtype=np.uint16)
            self._mat = arr
        return self._mat

    def contains_vector(self, v):
        row = _clean_vector(self.field, v, self.n)
        f = self.field
        for brow, pc in zip(self.basis, self.pivots):
            c = row[pc]
            if c:
                row = [f.sub_c(a, f.mul_c(c, b)) for a, b in zip(row, brow)]
        return not any(row)

    def contains(self, other: "Subspace"):
        _same_ambient(self, other)
        return all(self.contains_vector(r) for r in other.basis)

    def points(self):
        return points_of(self)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field is other.field and self.n == other.n
                and self.basis == other.basis)

    def __hash__(self):
        return hash((id(self.field), self.n, self.basis))

    def __lt__(self, other):
        _same_ambient(self, other)
        return self.key < other.key

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, GF({self.field.q}))"


def _same_ambient(a, b):
    if a.field is not b.field or a.n != b.n:
        raise AmbientMismatch(
            f"ambients differ: GF({a.field.q})^{a.n} vs GF({b.field.q})^{b.n}")


def span(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return Subspace.from_vectors(a.field, a.n, list(a.basis) + list(b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rref of [[A A], [B 0]]; zero-left rows carry the intersection."""
    _same_ambient(a, b)
    n = a.n
    rows = [list(r) + list(r) for r in a.basis]
    rows += [list(r) + [0] * n for r in b.basis]
    red, _ = rref(a.field, rows, 2 * n)
    inter = [r[n:] for r in red if not any(r[:n])]
    return Subspace.from_vectors(a.field, n, inter)


def contains(s: Subspace, v) -> bool:
    return s.contains_vector(v)


def nullspace(field: Field, rows, n) -> Subspace:
    """Solution space of M v = 0 for the given constraint rows."""
    red, pivots = rref(field, rows, n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field.neg_c(red[i][fcol])
        basis.append(v)
    return Subspace.from_vectors(field, n, basis)


def _combo(field, coeff, basis, n):
    out = [0] * n
    for c, row in zip(coeff, basis):
        if c:
            for j, b in enumerate(row):
                if b:
                    out[j] = field.add_c(out[j], field.mul_c(c, b))
    return tuple(out)


def points_of(s: Subspace):
    """All projective points of s, lexicographically sorted by representative."""
    q, r = s.field.q, s.dim
    if r == 0:
        return []
    count = (q**r - 1) // (q - 1)
    if count > ENUM_LIMIT:
        raise TooLarge(f"{count} points exceeds enumeration guard {ENUM_LIMIT}")
    reps = []
    for lead in range(r):
        for tail in itertools.product(range(q), repeat=r - lead - 1):
            coeff = (0,) * lead + (1,) + tail
            reps.append(_combo(s.field, coeff, s.basis, s.n))
    reps.sort()
    return [ProjectivePoint(rep) for rep in reps]


def subspaces_of(s: Subspace, t: int):
    """All t-dimensional subspaces of s, canonical bases, sorted by key."""
    r = s.dim
    if not 0 <= t <= r:
        raise OutOfRange(f"t = {t} outside 0..{r}")
    count = gaussian_binomial(r, t, s.field.q)
    if count > ENUM_LIMIT:
        raise TooLarge(f"{count} subspaces exceeds enumeration guard {ENUM_LIMIT}")
    q, field = s.field.q, s.field
    out = []
    for pivots in itertools.combinations(range(r), t):
        cells = [(i, j) for i in range(t)
                 for j in range(pivots[i] + 1, r) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(cells)):
            coeff = [[0] * r for _ in range(t)]
            for i, pc in enumerate(pivots):
                coeff[i][pc] = 1
            for (i, j), v in zip(cells, vals):
                coeff[i][j] = v
            rows = [_combo(field, crow, s.basis, s.n) for crow in coeff]
            out.append(Subspace.from_vectors(field, s.n, rows))
    assert len(out) == count
    out.sort(key=lambda sub: sub.key)
    return out


def hyperplanes_of(s: Subspace):
    """All (dim-1)-dimensional subspaces of s."""
    if s.dim == 0:
        raise OutOfRange("the zero space has no hyperplanes")
    return subspaces_of(s, s.dim - 1)


def gaussian_binomial(m: int, t: int, q: int) -> int:
    """Number of t-dimensional subspaces of GF(q)^m, exact."""
    if t < 0 or t > m:
        return 0
    num = den = 1
    for i in range(t):
        num *= q**(m - i) - 1
        den *= q**(i + 1) - 1
    assert num % den == 0
    return num // den


# ── bulk numpy helpers on code arrays ──────────────────────────────────────

def mat_mul_codes(field: Field, a, b):
    """Matrix product over GF(q) for numpy code arrays: (m, r) @ (r, n)."""
    t = field.tables()
    a = np.asarray(a, dtype=np.uint16)
    b = np.asarray(b, dtype=np.uint16)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint16)
    for i in range(a.shape[1]):
        out = t.add[out, t.mul[a[:, i][:, None], b[i, :][None, :]]]
    return out


def conj_codes(field: Field, a):
    """Elementwise conjugation code table applied to a numpy code array."""
    return field.tables().conj[np.asarray(a, dtype=np.uint16)]
