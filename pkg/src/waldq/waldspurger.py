"""Torus-equivariant functions on rank-2 lattices and the Hecke module structure.

A function here is determined by finitely many values on orbit representatives
(indexed by the nonnegative invariant m) and extends to the whole lattice set
by chi-equivariance.  The Hecke action is computed by exact enumeration of
sublattice transitions; everything stays symbolic in the character variables
unless explicitly specialized.
"""

from __future__ import annotations

import dataclasses
import functools
from fractions import Fraction

from .hecke import HeckeElement, ZeroEigenvalue, satake_basis, schur_gl2
from .lattice import Coweight, Lattice2, _raw_members
from .scalars import LaurentScalar, specialize
from .torus import EtaleKind, _envelope_raw, chi_c, orbit_representative

__all__ = [
    "CharacterParams",
    "TruncationTooSmall",
    "WaldFunction",
    "WaldModel",
]


class TruncationTooSmall(ValueError):
    """The requested window is too small for a meaningful truncated check."""


@dataclasses.dataclass(frozen=True)
class CharacterParams:
    """A nonramified character of the torus: symbolic, or pinned to rationals.

    Numeric parameters assign nonzero rationals to the character variables of
    the kind (alpha/beta for the split algebra, gamma for the ramified one).
    """

    kind: EtaleKind
    symbolic: bool = True
    assignment: tuple = ()

    def __init__(self, kind, symbolic=True, assignment=None):
        kind = EtaleKind(kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "symbolic", bool(symbolic))
        if self.symbolic:
            if assignment:
                raise ValueError("symbolic parameters take no assignment")
            object.__setattr__(self, "assignment", ())
            return
        wanted = ("alpha", "beta") if kind is EtaleKind.SPLIT else ("gamma",)
        given = dict(assignment or {})
        rows = []
        for name in wanted:
            if name not in given:
                raise ValueError(f"numeric parameters need a value for {name}")
            v = Fraction(given.pop(name))
            if v == 0:
                raise ValueError(f"{name} must be nonzero")
            rows.append((name, v))
        if given:
            raise ValueError(f"unexpected variables: {sorted(given)}")
        object.__setattr__(self, "assignment", tuple(rows))

    def values(self) -> dict:
        """The assignment as a plain dict (empty when symbolic)."""
        return dict(self.assignment)


def _as_value(q, v):
    if isinstance(v, LaurentScalar):
        if v.q != q:
            raise ValueError("mixed residue characteristics")
        return v
    if isinstance(v, (int, Fraction)):
        return LaurentScalar.from_fraction(q, Fraction(v))
    raise TypeError(f"cannot use {type(v).__name__} as a function value")


class WaldFunction:
    """Finitely supported values on orbit indices, with symbolic coefficients."""

    __slots__ = ("q", "kind", "values")

    def __init__(self, q, kind, values=()):
        kind = EtaleKind(kind)
        cleaned = {}
        items = values.items() if isinstance(values, dict) else values
        for m, v in items:
            if not isinstance(m, int) or m < 0:
                raise ValueError("orbit indices are nonnegative integers")
            v = _as_value(q, v)
            if m in cleaned:
                v = cleaned[m] + v
            if v.is_zero():
                cleaned.pop(m, None)
            else:
                cleaned[m] = v
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "values", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("WaldFunction is immutable")

    def is_zero(self):
        return not self.values

    def support(self):
        return tuple(sorted(self.values))

    def value(self, m) -> LaurentScalar:
        return self.values.get(m, LaurentScalar.zero(self.q))

    def _combine(self, other, sign):
        if not isinstance(other, WaldFunction):
            return NotImplemented
        if self.q != other.q or self.kind is not other.kind:
            raise ValueError("mixed function spaces")
        acc = dict(self.values)
        for m, v in other.values.items():
            cur = acc.get(m)
            acc[m] = v * sign if cur is None else cur + v * sign
        return WaldFunction(self.q, self.kind, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return WaldFunction(self.q, self.kind, {m: -v for m, v in self.values.items()})

    def scaled(self, value) -> "WaldFunction":
        s = _as_value(self.q, value)
        return WaldFunction(self.q, self.kind, {m: v * s for m, v in self.values.items()})

    def __mul__(self, other):
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other):
        return (
            isinstance(other, WaldFunction)
            and self.q == other.q
            and self.kind is other.kind
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.q, self.kind, tuple(sorted(self.values.items(), key=lambda p: p[0]))))

    def __repr__(self):
        body = ", ".join(f"{m}: {v}" for m, v in sorted(self.values.items()))
        return f"WaldFunction({self.q}, {self.kind.value}, {{{body}}})"

    def to_json(self):
        return {
            "q": self.q,
            "kind": self.kind.value,
            "values": [
                {"m": m, "scalar": v.to_json()} for m, v in sorted(self.values.items())
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "WaldFunction":
        q = obj["q"]
        return cls(
            q,
            obj["kind"],
            [(row["m"], LaurentScalar.from_json(q, row["scalar"])) for row in obj["values"]],
        )


def _exps3(kind, exps):
    if kind is EtaleKind.SPLIT:
        v1, v2 = exps
        return (v1, v2, 0)
    return (0, 0, exps[0])


@functools.lru_cache(maxsize=None)
def _transitions(q, kind_value, m0, lam):
    """Exact-position moves out of orbit m0, aggregated by (target, character).

    Returns a sorted tuple of (m_target, class_exponents, multiplicity): the
    lattices in exact position lam from representative m0 grouped by their
    orbit data.  Every target satisfies |m_target - m0| <= lam1 - lam2
    because envelopes are monotone under inclusion.
    """
    kind = EtaleKind(kind_value)
    rep = orbit_representative(q, kind, m0)
    agg = {}
    for a2, b2, c2, s in _raw_members(q, rep.triple, Coweight(*lam)):
        if s != 0:
            continue
        exps, m1 = _envelope_raw(kind, a2, b2, c2)
        key = (m1, exps)
        agg[key] = agg.get(key, 0) + 1
    return tuple(sorted((m1, exps, n) for (m1, exps), n in agg.items()))


@functools.lru_cache(maxsize=None)
def _stratum_table(q, lam):
    """Orbit-data histogram of ALL colength sublattices of the standard lattice.

    One enumeration serves both algebra kinds: returns a sorted tuple of
    ((kind_value, m), count) over closure members of position lam.
    """
    triple = Lattice2.standard(q).triple
    counts = {}
    for a2, b2, c2, _s in _raw_members(q, triple, Coweight(*lam)):
        for kind in (EtaleKind.SPLIT, EtaleKind.RAMIFIED):
            _exps, m1 = _envelope_raw(kind, a2, b2, c2)
            key = (kind.value, m1)
            counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


@functools.lru_cache(maxsize=None)
def _ic_cached(q, kind_value, mirror, d):
    model = WaldModel(q, kind_value, convention="mirror" if mirror else "standard")
    return model.act(satake_basis(q, Coweight(d, 0)), model.delta(0))


class WaldModel:
    """The Hecke-module structure on equivariant functions for one algebra kind.

    ``convention`` picks the direction lattices move under the action:
    "standard" sums over sublattice-type positions (this is the convention
    under which the degree-d basis function is supported on {0..d});
    "mirror" applies the dual coweight (-lam2, -lam1) instead.
    """

    __slots__ = ("q", "kind", "convention")

    def __init__(self, q, kind, convention="standard"):
        if convention not in ("standard", "mirror"):
            raise ValueError(f"unknown convention {convention!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "kind", EtaleKind(kind))
        object.__setattr__(self, "convention", convention)

    def __setattr__(self, name, value):
        raise AttributeError("WaldModel is immutable")

    def delta(self, m) -> WaldFunction:
        """The unit value at orbit index m."""
        return WaldFunction(self.q, self.kind, {m: 1})

    def delta0(self) -> WaldFunction:
        return self.delta(0)

    def _effective(self, lam: Coweight) -> Coweight:
        if self.convention == "standard":
            return lam
        return Coweight(-lam.a2, -lam.a1)

    def act(self, h: HeckeElement, f: WaldFunction) -> WaldFunction:
        """Convolution action of a Hecke element on an equivariant function.

        Value at representative m0: sum over lattices L' in exact position
        lam of chi(class of L') * f[invariant of L'], summed over the terms
        of h with their coefficients.
        """
        if not isinstance(h, HeckeElement) or not isinstance(f, WaldFunction):
            raise TypeError("act expects (HeckeElement, WaldFunction)")
        if h.q != self.q or f.q != self.q:
            raise ValueError("mixed residue characteristics")
        if f.kind is not self.kind:
            raise ValueError("function kind does not match the model")
        if h.is_zero() or f.is_zero():
            return WaldFunction(self.q, self.kind, {})
        mlo = min(f.values)
        mhi = max(f.values)
        acc = {}
        for lam, coeff in h.terms.items():
            eff = self._effective(lam)
            width = eff.a1 - eff.a2
            for m0 in range(max(0, mlo - width), mhi + width + 1):
                cell = None
                for m1, exps, count in _transitions(
                    self.q, self.kind.value, m0, (eff.a1, eff.a2)
                ):
                    fv = f.values.get(m1)
                    if fv is None:
                        continue
                    chi = LaurentScalar.monomial(self.q, _exps3(self.kind, exps))
                    term = coeff * chi * fv * count
                    cell = term if cell is None else cell + term
                if cell is not None and not cell.is_zero():
                    cur = acc.get(m0)
                    acc[m0] = cell if cur is None else cur + cell
        return WaldFunction(self.q, self.kind, acc)

    def ic_basis(self, d) -> WaldFunction:
        """Action of the degree-d self-dual basis element on the delta at 0.

        Supported on {0..d}; the value at m is a single character monomial in
        the ramified case and a (d-m+1)-monomial sum in the split case.
        """
        if not isinstance(d, int) or d < 0:
            raise ValueError("degree must be a nonnegative integer")
        return _ic_cached(self.q, self.kind.value, self.convention == "mirror", d)

    def minimal_orbit_counts(self, d, m) -> int:
        """Number of colength-d sublattices of representative m on the closed orbit.

        Counts closure members (all sublattices of colength d) whose invariant
        is 0.  Expected: 0 when d < m, else 1 (ramified) or d-m+1 (split).
        """
        if d < 0 or m < 0:
            raise ValueError("arguments must be nonnegative")
        rep = orbit_representative(self.q, self.kind, m)
        n = 0
        for a2, b2, c2, _s in _raw_members(self.q, rep.triple, Coweight(d, 0)):
            _exps, m1 = _envelope_raw(self.kind, a2, b2, c2)
            if m1 == 0:
                n += 1
        return n

    def orbit_stratum_counts(self, lam, m) -> int:
        """Number of closure members of the standard lattice with invariant m."""
        lam = Coweight(*lam)
        table = _stratum_table(self.q, (lam.a1, lam.a2))
        for (kind_value, m1), count in table:
            if kind_value == self.kind.value and m1 == m:
                return count
        return 0

    def multone_matrix(self, depth) -> list:
        """Matrix of {T_(a,0) acting on delta0}_{a<=depth} in the delta basis.

        Entry [m][a] is the value at orbit index m.  Upper-triangular with
        unit-monomial diagonal: the certificate that the module is free of
        rank one over the central-normalized algebra, to this truncation.
        """
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        cols = [
            self.act(HeckeElement.basis(self.q, Coweight(a_, 0)), self.delta(0))
            for a_ in range(depth + 1)
        ]
        zero = LaurentScalar.zero(self.q)
        return [
            [cols[a_].values.get(m, zero) for a_ in range(depth + 1)]
            for m in range(depth + 1)
        ]

    def cs_matrix(self, depth) -> list:
        """Matrix of the degree-d basis functions in the delta basis.

        Entry [m][d] = ic_basis(d) value at m; triangular, with the
        monomial-count pattern 1 (ramified) / d-m+1 (split) below the
        diagonal.  Its inverse is where nontrivial denominators appear.
        """
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        cols = [self.ic_basis(d) for d in range(depth + 1)]
        zero = LaurentScalar.zero(self.q)
        return [
            [cols[d].values.get(m, zero) for d in range(depth + 1)]
            for m in range(depth + 1)
        ]

    # -- truncated eigenfunction window check ---------------------------------

    def _specialized_ic(self, d, assignment, r_value):
        return {
            m: specialize(v, assignment, r_value)
            for m, v in self.ic_basis(d).values.items()
        }

    def eigen_check(self, depth, e1, params: CharacterParams, r_value=None) -> dict:
        """Window check that the truncated eigen-sum behaves as an eigenvector.

        Builds K = sum_{d<=depth} c_d * W_d with W_d the specialized degree-d
        basis function and c_d = schur((d,0), e1, e2)/(e1*e2)^d, e2 being
        determined by the central character value.  The full (untruncated)
        sum is a formal eigenvector but is not locally finite, so pointwise
        values never stabilize; the checkable exact statements are:

        * expanding both sides of the degree-1 eigen identity over the
          triangular basis {W_e}, the coefficients agree for every degree
          e <= depth-1 (reported as the window);
        * the top-degree defect is exactly
          c_depth * W_{depth+1} - (e1*e2) * c_{depth+1} * W_depth;
        * the central element acts by e1*e2 exactly (no truncation loss).
        """
        if not isinstance(depth, int) or depth < 2:
            raise TruncationTooSmall("window checks need depth at least 2")
        if not isinstance(params, CharacterParams):
            raise TypeError("params must be CharacterParams")
        if params.kind is not self.kind:
            raise ValueError("parameter kind does not match the model")
        if params.symbolic:
            raise ValueError("the eigen check needs numeric parameters")
        assignment = params.values()
        e1 = Fraction(e1)
        if e1 == 0:
            raise ZeroEigenvalue("e1 must be nonzero")
        central = specialize(chi_c(self.q, self.kind), assignment, r_value)
        e2 = central / e1

        wtab = [
            self._specialized_ic(d, assignment, r_value) for d in range(depth + 2)
        ]
        coeff = [
            schur_gl2(Coweight(d, 0), e1, e2) / central ** d for d in range(depth + 2)
        ]

        kvals = {}
        for d in range(depth + 1):
            for m, v in wtab[d].items():
                kvals[m] = kvals.get(m, Fraction(0)) + coeff[d] * v
        kfun = WaldFunction(
            self.q, self.kind, {m: v for m, v in kvals.items() if v != 0}
        )

        acted = self.act(satake_basis(self.q, Coweight(1, 0)), kfun)
        lhs = {m: specialize(v, assignment, r_value) for m, v in acted.values.items()}
        rhs = {m: (e1 + e2) * v for m, v in kvals.items() if v != 0}

        # exact defect identity at every orbit index
        defect_ok = True
        for m in range(depth + 2):
            want = coeff[depth] * wtab[depth + 1].get(m, Fraction(0)) - (
                central * coeff[depth + 1] * wtab[depth].get(m, Fraction(0))
            )
            got = lhs.get(m, Fraction(0)) - rhs.get(m, Fraction(0))
            if got != want:
                defect_ok = False
                break

        xl = _basis_expand(lhs, wtab, depth + 1)
        xr = _basis_expand(rhs, wtab, depth + 1)
        window = -1
        for e in range(depth + 2):
            if xl[e] != xr[e]:
                break
            window = e
        eigen_ok = window >= depth - 1

        acted_c = self.act(HeckeElement.basis(self.q, Coweight(1, 1)), kfun)
        central_ok = all(
            specialize(acted_c.value(m), assignment, r_value)
            == central * kvals.get(m, Fraction(0))
            for m in range(depth + 1)
        ) and all(m <= depth for m in acted_c.values)

        return {
            "kind": self.kind.value,
            "q": self.q,
            "depth": depth,
            "e1": str(e1),
            "e2": str(e2),
            "window_required": depth - 1,
            "window": window,
            "eigen_pass": eigen_ok,
            "defect_pass": defect_ok,
            "central_pass": central_ok,
            "pass": eigen_ok and defect_ok and central_ok,
        }


def _basis_expand(values, wtab, top):
    """Coefficients of a function over the triangular family wtab[0..top].

    Back-substitution from the top degree; wtab[e][e] is a nonzero rational
    (a power of the central character value), so the expansion is exact and
    unique for functions supported in {0..top}.
    """
    rem = {m: v for m, v in values.items() if v != 0}
    if any(m > top for m in rem):
        raise ValueError("support exceeds the expansion range")
    out = [Fraction(0)] * (top + 1)
    for e in range(top, -1, -1):
        ce = rem.get(e, Fraction(0)) / wtab[e][e]
        out[e] = ce
        if ce:
            for m, v in wtab[e].items():
                nv = rem.get(m, Fraction(0)) - ce * v
                if nv:
                    rem[m] = nv
                else:
                    rem.pop(m, None)
    if rem:
        raise ValueError("expansion residue should be empty")
    return out
