"""Spherical Hecke algebra of GL2 over F_q((t)).

Elements are finite sums of double-coset indicator functions T_lam indexed by
dominant coweights, with coefficients in the symbolic character ring.
Multiplication is convolution, computed exactly by lattice counting: the
structure constant of T_nu in T_lam * T_mu is the number of chains
L0 -> L'' -> L_nu with the prescribed relative positions.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .lattice import Coweight, Lattice2, enumerate_in_position, relative_position
from .scalars import LaurentScalar
from .torus import EtaleKind, chi_c

__all__ = [
    "HeckeElement",
    "ZeroEigenvalue",
    "central_normalize",
    "convolve",
    "satake_basis",
    "schur_gl2",
    "to_satake",
]


class ZeroEigenvalue(ValueError):
    """A character evaluation received a zero eigenvalue."""


def _as_scalar(q, value):
    if isinstance(value, LaurentScalar):
        if value.q != q:
            raise ValueError("mixed residue characteristics")
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentScalar.from_fraction(q, Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class HeckeElement:
    """A finite linear combination of basis elements T_lam.

    Immutable; ``terms`` maps dominant Coweights to nonzero LaurentScalar
    coefficients.  Addition and scalar multiplication are componentwise;
    ``*`` between two elements is convolution.
    """

    __slots__ = ("q", "terms")

    def __init__(self, q, terms=()):
        cleaned = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for cw, coeff in items:
            cw = Coweight(*cw)
            if not cw.is_dominant():
                raise ValueError(f"basis index {cw} is not dominant")
            coeff = _as_scalar(q, coeff)
            if cw in cleaned:
                coeff = cleaned[cw] + coeff
            if coeff.is_zero():
                cleaned.pop(cw, None)
            else:
                cleaned[cw] = coeff
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("HeckeElement is immutable")

    @classmethod
    def basis(cls, q, lam) -> "HeckeElement":
        return cls(q, [(Coweight(*lam), 1)])

    @classmethod
    def unit(cls, q) -> "HeckeElement":
        return cls.basis(q, Coweight(0, 0))

    @classmethod
    def zero(cls, q) -> "HeckeElement":
        return cls(q)

    def is_zero(self):
        return not self.terms

    def support(self):
        """Sorted tuple of coweights with nonzero coefficient."""
        return tuple(sorted(self.terms))

    def coefficient(self, lam) -> LaurentScalar:
        return self.terms.get(Coweight(*lam), LaurentScalar.zero(self.q))

    def _combine(self, other, sign):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if self.q != other.q:
            raise ValueError("mixed residue characteristics")
        acc = dict(self.terms)
        for cw, coeff in other.terms.items():
            cur = acc.get(cw)
            acc[cw] = coeff * sign if cur is None else cur + coeff * sign
        return HeckeElement(self.q, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return HeckeElement(self.q, {cw: -c for cw, c in self.terms.items()})

    def scaled(self, value) -> "HeckeElement":
        s = _as_scalar(self.q, value)
        return HeckeElement(self.q, {cw: c * s for cw, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return convolve(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElement)
            and self.q == other.q
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.q, tuple(sorted(self.terms.items(), key=lambda p: p[0]))))

    def __repr__(self):
        if not self.terms:
            return f"HeckeElement({self.q}, 0)"
        bits = " + ".join(f"({c})*T{tuple(cw)}" for cw, c in sorted(self.terms.items()))
        return f"HeckeElement({self.q}, {bits})"

    def to_json(self):
        return {
            "q": self.q,
            "terms": [
                {"coweight": [cw.a1, cw.a2], "scalar": c.to_json()}
                for cw, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "HeckeElement":
        q = obj["q"]
        terms = [
            (Coweight(*row["coweight"]), LaurentScalar.from_json(q, row["scalar"]))
            for row in obj["terms"]
        ]
        return cls(q, terms)


@functools.lru_cache(maxsize=None)
def _pair_product(q, lam, mu):
    """Structure constants of T_lam * T_mu: tuple of ((nu1, nu2), count).

    Counts, for each dominant nu of total degree |lam| + |mu|, the lattices
    L'' in exact position lam from the standard lattice such that the
    position of L'' relative to the diagonal lattice L_nu is mu.
    """
    base = Lattice2.standard(q)
    mids = enumerate_in_position(base, Coweight(*lam))
    mu_cw = Coweight(*mu)
    total = lam[0] + lam[1] + mu[0] + mu[1]
    out = []
    for nu1 in range(-(-total // 2), lam[0] + mu[0] + 1):
        nu = (nu1, total - nu1)
        target = Lattice2.diagonal(q, nu[0], nu[1])
        count = sum(1 for mid in mids if relative_position(mid, target) == mu_cw)
        if count:
            out.append((nu, count))
    return tuple(out)


def convolve(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    """Convolution product, bilinear over the structure constants."""
    if not isinstance(x, HeckeElement) or not isinstance(y, HeckeElement):
        raise TypeError("convolve expects two HeckeElements")
    if x.q != y.q:
        raise ValueError("mixed residue characteristics")
    acc = {}
    for lam, cx in x.terms.items():
        for mu, cy in y.terms.items():
            c = cx * cy
            for nu, count in _pair_product(x.q, tuple(lam), tuple(mu)):
                cw = Coweight(*nu)
                term = c * count
                cur = acc.get(cw)
                acc[cw] = term if cur is None else cur + term
    return HeckeElement(x.q, acc)


@functools.lru_cache(maxsize=None)
def _satake_cached(q, lam):
    a, b = lam
    if a == b:
        # a central orbit closure is a single point
        return HeckeElement.basis(q, Coweight(a, b))
    if b != 0:
        core = _satake_cached(q, (a - b, 0))
        return HeckeElement(
            q, {Coweight(c1 + b, c2 + b): v for (c1, c2), v in core.terms.items()}
        )
    if a == 1:
        return HeckeElement.basis(q, Coweight(1, 0))
    # two-step recursion from the minuscule generator; the correction term
    # is the central shift of the basis element two degrees down
    head = convolve(HeckeElement.basis(q, Coweight(1, 0)), _satake_cached(q, (a - 1, 0)))
    corr = _satake_cached(q, (a - 2, 0))
    shifted = HeckeElement(
        q, {Coweight(c1 + 1, c2 + 1): v for (c1, c2), v in corr.terms.items()}
    )
    return head - shifted


def satake_basis(q, lam) -> HeckeElement:
    """The self-dual basis element attached to the orbit closure of lam.

    Characterized by: the minuscule and central cases are single basis terms,
    and the product rule with the minuscule generator has multiplicity-free
    upper term (the two-step recursion below).  All coefficients come out as
    nonnegative integers.
    """
    lam = Coweight(*lam)
    if not lam.is_dominant():
        raise ValueError(f"coweight {lam} is not dominant")
    return _satake_cached(q, (lam.a1, lam.a2))


def to_satake(h: HeckeElement) -> dict:
    """Expand h over the satake_basis family; returns {Coweight: LaurentScalar}.

    Greedy peeling from the dominance-largest remaining term; terminates
    because each basis element is unitriangular against the T-basis.
    """
    rem = h
    out = {}
    while rem.terms:
        lam = max(rem.terms, key=lambda cw: (cw.a1 - cw.a2, cw.a1, cw.a2))
        coeff = rem.terms[lam]
        out[lam] = coeff
        rem = rem - satake_basis(h.q, lam).scaled(coeff)
    return out


def schur_gl2(lam, e1, e2) -> Fraction:
    """Character of the irreducible GL2 representation with highest weight lam.

    Evaluated at diagonal (e1, e2): (e1*e2)^lam2 * h_{lam1-lam2}(e1, e2),
    using the complete homogeneous polynomial form (no division, so the
    degenerate case e1 = e2 is fine).
    """
    lam = Coweight(*lam)
    if not lam.is_dominant():
        raise ValueError(f"coweight {lam} is not dominant")
    e1 = Fraction(e1)
    e2 = Fraction(e2)
    if e1 == 0 or e2 == 0:
        raise ZeroEigenvalue("character values must be nonzero")
    n = lam.a1 - lam.a2
    h = sum((e1 ** i) * (e2 ** (n - i)) for i in range(n + 1))
    return (e1 * e2) ** lam.a2 * h


def central_normalize(h: HeckeElement, kind) -> HeckeElement:
    """Rewrite each T_(a,b) as chi_c(t)^b * T_(a-b,0).

    This is the presentation of the character-twisted algebra in which the
    central coweight acts through the torus character; it is exactly how the
    central element acts on equivariant functions, so the identification is
    harmless there and explicit here.
    """
    kind = EtaleKind(kind)
    unit_char = chi_c(h.q, kind)
    acc = {}
    for cw, coeff in h.terms.items():
        target = Coweight(cw.a1 - cw.a2, 0)
        term = coeff * unit_char ** cw.a2
        cur = acc.get(target)
        acc[target] = term if cur is None else cur + term
    return HeckeElement(h.q, acc)
