"""Rank-2 lattices over O = F_q[[t]] inside F^2, F = F_q((t)).

A lattice is a finitely generated O-submodule of F^2 of rank 2, stored by its
canonical triangular basis: columns (t^a, 0) and (c, t^b) with c reduced mod
t^a (every exponent of c is < a; the offset may be negative).  Two lattices
are equal iff their triples coincide, so equality, hashing, and deterministic
ordering are structural.

Sublattice enumeration is exact and duplicate-free: the colength-n
sublattices of L biject with triangular triples (alpha, beta, w), alpha +
beta = n, w a polynomial of degree < alpha, giving sum(q^alpha) members, of
which the ones in exact relative position (n, 0) are q^(n-1) * (q+1).
"""

from __future__ import annotations

from typing import NamedTuple

from . import backend
from ._purekern import pshift, ptrunc
from .series import LaurentPoly


class SingularGenerators(ValueError):
    """Raised when proposed generators do not span a rank-2 lattice."""


class Coweight(NamedTuple):
    """An integral coweight (a1, a2) of GL2; dominant means a1 >= a2."""

    a1: int
    a2: int

    def is_dominant(self):
        return self.a1 >= self.a2

    def total(self):
        return self.a1 + self.a2

    def __str__(self):
        return f"({self.a1},{self.a2})"

    @classmethod
    def parse(cls, text):
        parts = text.strip().lstrip("(").rstrip(")").split(",")
        if len(parts) != 2:
            raise ValueError(f"cannot parse coweight from {text!r}")
        return cls(int(parts[0]), int(parts[1]))


class Lattice2:
    """A rank-2 O-lattice in canonical triangular form."""

    __slots__ = ("q", "a", "b", "c")

    def __init__(self, q, a, b, c=None):
        c = LaurentPoly.zero(q) if c is None else c
        if c.q != q:
            raise ValueError("mixed coefficient fields")
        if not c.is_zero() and c.degree() >= a:
            raise ValueError("c must be reduced mod t^a")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice2 is immutable")

    # construction ---------------------------------------------------------

    @classmethod
    def standard(cls, q):
        """The standard lattice O^2."""
        return cls(q, 0, 0)

    @classmethod
    def diagonal(cls, q, k1, k2):
        """span{(t^k1, 0), (0, t^k2)}."""
        return cls(q, k1, k2)

    @classmethod
    def from_triple(cls, q, a, b, c_raw):
        return cls(q, a, b, LaurentPoly.from_raw(q, c_raw))

    # structure --------------------------------------------------------------

    @property
    def valdet(self):
        """Valuation of the determinant of any basis."""
        return self.a + self.b

    @property
    def triple(self):
        return (self.a, self.b, self.c.raw)

    def basis(self):
        """Canonical basis as columns ((t^a, 0), (c, t^b))."""
        q = self.q
        return (
            (LaurentPoly.t_power(q, self.a), LaurentPoly.zero(q)),
            (self.c, LaurentPoly.t_power(q, self.b)),
        )

    @property
    def sort_key(self):
        return (self.a, self.b, self.c.off, self.c.co)

    def scale(self, k):
        """t^k * L."""
        return Lattice2(self.q, self.a + k, self.b + k, self.c.shift(k))

    def transform(self, m):
        """g * L for a 2x2 matrix g over F (rows of LaurentPoly)."""
        (g11, g12), (g21, g22) = m
        cols = []
        for top, bot in self.basis():
            cols.append((g11 * top + g12 * bot, g21 * top + g22 * bot))
        return canonicalize(self.q, (cols[0], cols[1]))

    def __eq__(self, other):
        return (
            isinstance(other, Lattice2)
            and self.q == other.q
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.q, self.a, self.b, self.c))

    def __repr__(self):
        return f"Lattice2(q={self.q}, a={self.a}, b={self.b}, c={self.c})"

    def to_json(self):
        return {"a": self.a, "b": self.b, "c": self.c.to_json()}

    @classmethod
    def from_json(cls, q, obj):
        return cls(q, int(obj["a"]), int(obj["b"]), LaurentPoly.from_json(q, obj["c"]))


def canonicalize(q, columns) -> Lattice2:
    """Canonical form of the lattice spanned by two column vectors.

    ``columns`` is ((x1, y1), (x2, y2)) with LaurentPoly entries.  Raises
    SingularGenerators when the columns are linearly dependent over F.
    """
    (x1, y1), (x2, y2) = columns
    out = backend.canon(q, x1.raw, y1.raw, x2.raw, y2.raw)
    if out is None:
        raise SingularGenerators("generators do not span a rank-2 lattice")
    return Lattice2.from_triple(q, *out)


def relative_position(l1: Lattice2, l2: Lattice2) -> Coweight:
    """Elementary-divisor exponents (larger first) of the transition l1 -> l2.

    relative_position(L, g L) is the Cartan invariant of g; it is invariant
    under a common transform and antisymmetric: swapping the arguments
    negates and swaps the pair.
    """
    if l1.q != l2.q:
        raise ValueError("mixed coefficient fields")
    r = backend.rel_pos(l1.q, l1.a, l1.b, l1.c.raw, l2.a, l2.b, l2.c.raw)
    return Coweight(*r)


def _raw_members(q, triple, lam):
    """Raw enumeration backing closure_members / enumerate_in_position.

    Returns (a2, b2, c2_raw, s) tuples for all sublattices of t^lam2 * L of
    colength lam1 - lam2; s = 0 exactly for the members in position lam.
    """
    if not lam.is_dominant():
        raise ValueError(f"coweight {lam} is not dominant")
    a, b, c = triple
    base_c = ptrunc(pshift(c, lam.a2), a + lam.a2)
    return backend.sublattices(q, a + lam.a2, b + lam.a2, base_c, lam.a1 - lam.a2)


def closure_members(lat: Lattice2, lam: Coweight) -> list[Lattice2]:
    """All lattices whose relative position w.r.t. lat is dominated by lam.

    These are exactly the colength-(lam1 - lam2) sublattices of t^lam2 * lat;
    the result is sorted by the canonical structural key.
    """
    rows = _raw_members(lat.q, lat.triple, Coweight(*lam))
    out = [Lattice2.from_triple(lat.q, a2, b2, c2) for (a2, b2, c2, _s) in rows]
    out.sort(key=lambda l: l.sort_key)
    return out


def enumerate_in_position(lat: Lattice2, lam: Coweight) -> list[Lattice2]:
    """All lattices in exact relative position lam from lat, sorted."""
    rows = _raw_members(lat.q, lat.triple, Coweight(*lam))
    out = [
        Lattice2.from_triple(lat.q, a2, b2, c2)
        for (a2, b2, c2, s) in rows
        if s == 0
    ]
    out.sort(key=lambda l: l.sort_key)
    return out


def position_count_formula(q, d):
    """q^(d-1) * (q+1) for d >= 1, else 1: the size of an exact (d, 0) shell."""
    return 1 if d == 0 else q ** (d - 1) * (q + 1)
