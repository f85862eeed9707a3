"""Typed exceptions used across the package."""


class PolarSwitchError(Exception):
    """Base class for every package-specific error."""


# ── field / linear algebra guards ──────────────────────────────────────────

class NonPrime(PolarSwitchError):
    """Characteristic is not prime, or an order is not a prime power."""


class TooLarge(PolarSwitchError):
    """A size guard tripped (field order, enumeration count, graph order)."""


class NotSquareOrder(PolarSwitchError):
    """Conjugation needs GF(q) with q a square; this field is not."""


class AmbientMismatch(PolarSwitchError):
    """Operands live over different fields or ambient dimensions."""


class OutOfRange(PolarSwitchError):
    """An index or vertex is outside its valid range."""


class DimensionMismatch(PolarSwitchError):
    """A vector or subspace has the wrong length for its ambient space."""


# ── polar spaces ───────────────────────────────────────────────────────────

class NonSquareField(PolarSwitchError):
    """Unitary spaces need a square field order q."""


class BadDimension(PolarSwitchError):
    """The requested rank is outside the operation's supported range."""


class NotIsotropic(PolarSwitchError):
    """A subspace that must be totally isotropic is not."""


# ── graphs ─────────────────────────────────────────────────────────────────

class NotSrg(PolarSwitchError):
    """Graph fails strong regularity; carries a witness."""

    def __init__(self, message, witness=None, got=None, expected=None):
        super().__init__(message)
        self.witness = witness
        self.got = got
        self.expected = expected


class NotRegular(NotSrg):
    """Graph is not regular; witness is a pair of vertices with unequal degrees."""


class Degenerate(NotSrg):
    """Complete or empty graph: lambda/mu are not both defined."""


class MalformedInput(PolarSwitchError):
    """A serialized graph or switch spec does not parse."""


# ── switching ──────────────────────────────────────────────────────────────

class BadL(PolarSwitchError):
    """The base subspace is not a totally isotropic (d-1)-space."""


class NotParallel(PolarSwitchError):
    """Two hyperplanes do not belong to the same parallel class."""


class NotSwitchingSet(PolarSwitchError):
    """Subset fails the switching conditions; carries a witness vertex."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalInconsistency(PolarSwitchError):
    """A structural invariant that must always hold failed at runtime."""


# ── non-isomorphism certificates ───────────────────────────────────────────

class RankTooSmall(PolarSwitchError):
    """The certificate construction needs rank d >= 3."""


class SpectraEqual(PolarSwitchError):
    """Triangle spectra agree: the certificate is inconclusive."""
