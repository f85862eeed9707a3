"""Small finite fields GF(p^k) in the polynomial basis.

Elements are polynomials over GF(p) reduced modulo a fixed monic irreducible
of degree k.  The modulus is the lexicographically smallest monic irreducible,
comparing coefficient vectors lowest degree first.  That rule is deterministic
but it is *not* the Conway polynomial convention: GF(8) here is built on
x^3 + x^2 + 1, not x^3 + x + 1.

Two element encodings are used throughout the package:

* ``FieldElement`` - a thin immutable wrapper around the coefficient vector
  with operator overloads; convenient for desk work and for tests.
* integer *codes* - ``sum(c_i * p**i)``, the mixed-radix integer of the
  coefficient vector.  Bulk linear algebra stores codes in numpy arrays and
  works through the lookup tables from ``Field.tables()``.

Division by zero raises the built-in ``ZeroDivisionError``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import NonPrime, NotSquareOrder, TooLarge

ORDER_LIMIT = 2**20  # largest supported field order p**k
TABLE_LIMIT = 4096   # largest order for which q x q lookup tables are built
_LIST_LIMIT = 256    # below this, scalar ops go through plain python lists


# ── polynomial helpers (coefficient lists, lowest degree first) ────────────

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for i in range(dm):
                a[off + i] = (a[off + i] - c * m[i]) % p
        a.pop()
    return _trim(a)


def _is_prime(n):
    if n < 2:
        return False
    for f in range(2, isqrt(n) + 1):
        if n % f == 0:
            return False
    return True


def _irreducible(coeffs, p):
    """coeffs: full monic coefficient list, lowest degree first."""
    k = len(coeffs) - 1
    if k == 1:
        return True
    if coeffs[0] == 0:
        return False  # divisible by x
    # trial division by every monic polynomial of degree 1 .. k//2
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not _poly_mod(coeffs, list(tail) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def _find_modulus(p, k):
    if k == 1:
        return (0, 1)  # x
    for tail in itertools.product(range(p), repeat=k):
        cand = list(tail) + [1]
        if _irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible of degree %d over GF(%d)" % (k, p))


# ── lookup tables ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class FieldTables:
    """Dense code-indexed arithmetic tables; dtype uint16 throughout."""

    q: int
    add: np.ndarray        # (q, q)
    mul: np.ndarray        # (q, q)
    neg: np.ndarray        # (q,)
    inv: np.ndarray        # (q,); entry 0 is a 0 sentinel, never consulted
    conj: np.ndarray | None  # (q,) when k is even, else None


def _pow_code(a, e, mul):
    r, base = 1, int(a)
    while e:
        if e & 1:
            r = int(mul[r, base])
        base = int(mul[base, base])
        e >>= 1
    return r


def _build_tables(p, k, modulus):
    q = p**k
    ppow = p ** np.arange(k, dtype=np.int64)
    codes = np.arange(q, dtype=np.int64)
    C = (codes[:, None] // ppow[None, :]) % p  # (q, k) digit matrix

    def enc(mat):
        return ((mat % p) @ ppow).astype(np.uint16)

    add = np.empty((q, q), dtype=np.uint16)
    step = max(1, (1 << 22) // (q * k))
    for i0 in range(0, q, step):
        add[i0:i0 + step] = enc(C[i0:i0 + step, None, :] + C[None, :, :])

    neg = enc(-C)

    # x^m mod modulus for m = k .. 2k-2, one digit row per m
    base = [(-c) % p for c in modulus[:k]]
    rows, cur = [], base[:]
    for _ in range(k, 2 * k - 1):
        rows.append(cur[:])
        t = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c + t * b) % p for c, b in zip(cur, base)]
    red = np.array(rows, dtype=np.int64) if rows else np.zeros((0, k), np.int64)

    mul = np.empty((q, q), dtype=np.uint16)
    full = np.zeros((q, max(1, 2 * k - 1)), dtype=np.int64)
    for a in range(q):
        da = C[a]
        full[:] = 0
        for j in range(k):
            if da[j]:
                full[:, j:j + k] += da[j] * C
        for m in range(2 * k - 2, k - 1, -1):
            t = full[:, m] % p
            full[:, :k] += t[:, None] * red[m - k]
        mul[a] = enc(full[:, :k])

    inv = np.zeros(q, dtype=np.uint16)
    aa, bb = np.nonzero(mul == 1)
    inv[aa] = bb.astype(np.uint16)

    conj = None
    if k % 2 == 0:
        e = p ** (k // 2)
        conj = np.array([_pow_code(a, e, mul) for a in range(q)], dtype=np.uint16)

    return FieldTables(q=q, add=add, mul=mul, neg=neg, inv=inv, conj=conj)


# ── the field itself ───────────────────────────────────────────────────────

class Field:
    """GF(p^k).  Create via field_create(); instances are cached singletons."""

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus  # length k+1, monic, lowest degree first
        self._tables = None
        self._lists = None

    def __repr__(self):
        return f"GF({self.q})" if self.k == 1 else f"GF({self.p}^{self.k})"

    # ── element construction ──────────────────────────────────────────

    def element(self, value) -> "FieldElement":
        """Accepts a FieldElement of this field, an integer code, or coeffs."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            code = int(value)
            if not 0 <= code < self.q:
                raise ValueError(f"code {code} out of range for {self!r}")
            return FieldElement(self, self.decode(code))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.k:
            raise ValueError("coefficient vector longer than k")
        return FieldElement(self, coeffs + (0,) * (self.k - len(coeffs)))

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def elements(self):
        """All field elements in code order."""
        return [self.element(c) for c in range(self.q)]

    def encode(self, coeffs) -> int:
        code, w = 0, 1
        for c in coeffs:
            code += int(c) * w
            w *= self.p
        return code

    def decode(self, code) -> tuple:
        out = []
        for _ in range(self.k):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    # ── dense tables (bulk numpy arithmetic on codes) ─────────────────

    def tables(self) -> FieldTables:
        if self._tables is None:
            if self.q > TABLE_LIMIT:
                raise TooLarge(
                    f"lookup tables limited to q <= {TABLE_LIMIT}, got q = {self.q}")
            self._tables = _build_tables(self.p, self.k, self.modulus)
        return self._tables

    def _scalar_lists(self):
        if self._lists is None and self.q <= _LIST_LIMIT:
            t = self.tables()
            self._lists = (
                t.add.tolist(),
                t.mul.tolist(),
                t.neg.tolist(),
                t.inv.tolist(),
                t.conj.tolist() if t.conj is not None else None,
            )
        return self._lists

    # ── scalar arithmetic on codes ────────────────────────────────────
    # Table-backed for small q; falls back to coefficient arithmetic so that
    # fields above TABLE_LIMIT still support element-level work.

    def add_c(self, a, b):
        lists = self._scalar_lists()
        if lists is not None:
            return lists[0][a][b]
        p = self.p
        return self.encode([(x + y) % p for x, y in zip(self.decode(a), self.decode(b))])

    def sub_c(self, a, b):
        return self.add_c(a, self.neg_c(b))

    def neg_c(self, a):
        lists = self._scalar_lists()
        if lists is not None:
            return lists[2][a]
        p = self.p
        return self.encode([(-x) % p for x in self.decode(a)])

    def mul_c(self, a, b):
        lists = self._scalar_lists()
        if lists is not None:
            return lists[1][a][b]
        r = _poly_mod(_poly_mul(list(self.decode(a)), list(self.decode(b)), self.p),
                      self.modulus, self.p)
        return self.encode(r + [0] * (self.k - len(r)))

    def inv_c(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        lists = self._scalar_lists()
        if lists is not None:
            return lists[3][a]
        return self.pow_c(a, self.q - 2)

    def pow_c(self, a, e):
        e = int(e)
        if e < 0:
            return self.pow_c(self.inv_c(a), -e)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul_c(r, base)
            base = self.mul_c(base, base)
            e >>= 1
        return r

    def conj_c(self, a):
        """Code-level q -> q conjugation a -> a**sqrt(q); needs k even."""
        if self.k % 2:
            raise NotSquareOrder(f"{self!r} has odd degree, no conjugation")
        lists = self._scalar_lists()
        if lists is not None:
            return lists[4][a]
        return self.pow_c(a, self.p ** (self.k // 2))


# ── elements ───────────────────────────────────────────────────────────────

def _poly_str(coeffs):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}x" if i == 1 else f"{head}x^{i}")
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^k): an immutable coefficient vector, lowest degree first."""

    field: Field
    coeffs: tuple

    @property
    def code(self) -> int:
        return self.field.encode(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.element(int(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field,
                            tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        r = _poly_mod(_poly_mul(list(self.coeffs), list(o.coeffs), f.p), f.modulus, f.p)
        return FieldElement(f, tuple(r) + (0,) * (f.k - len(r)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        r, base = self.field.one, self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in " + repr(self.field))
        return self ** (self.field.q - 2)

    def conjugate(self):
        """a -> a**sqrt(q), the involutory automorphism; needs k even."""
        f = self.field
        if f.k % 2:
            raise NotSquareOrder(f"{f!r} has odd degree, no conjugation")
        return self ** (f.p ** (f.k // 2))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return _poly_str(self.coeffs)


def conjugate(a: FieldElement) -> FieldElement:
    return a.conjugate()


# ── factories ──────────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> Field:
    """GF(p^k) with the canonical modulus.  Guards: p prime, p**k <= 2**20."""
    p, k = int(p), int(k)
    if k < 1:
        raise ValueError("k must be >= 1")
    if not _is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p**k > ORDER_LIMIT:
        raise TooLarge(f"field order {p}^{k} exceeds {ORDER_LIMIT}")
    return Field(p, k, _find_modulus(p, k))


def field_from_order(q: int) -> Field:
    """GF(q) for a prime power q; raises NonPrime otherwise."""
    q = int(q)
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    p = q
    for f in range(2, isqrt(q) + 1):
        if q % f == 0:
            p = f
            break
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NonPrime(f"{q} is not a prime power")
    return field_create(p, k)
