"""Scalar coefficient ring for unramified-character bookkeeping.

Values live in Q(sqrt(q))[alpha^±1, beta^±1, gamma^±1]: Laurent monomials in
three formal character variables (alpha, beta for the two uniformizer classes
of the split torus, gamma for the ramified one) with coefficients a + b*r,
where r is a formal square root of q (r*r = q) and a, b are exact rationals.
Nothing is ever evaluated in floating point: ``specialize`` substitutes exact
rationals for the variables, and r survives symbolically unless a value for
it is supplied.

``Rational`` is the stdlib Fraction: exact, hashable, and sufficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

VARS = ("alpha", "beta", "gamma")


class NotAMonomial(ValueError):
    """Raised when a single-monomial operation meets a non-monomial."""


class ZeroCoefficient(ValueError):
    """Raised when a monomial is built with coefficient zero."""


class ZeroAssignment(ValueError):
    """Raised when specialize is given 0 for an occurring variable."""


class ResidualSqrtQ(ValueError):
    """Raised when specialize leaves a sqrt(q) term with no value for it."""


@dataclass(frozen=True)
class SqrtQ:
    """An element a + b*r of Q(r), r = sqrt(q) formal with r*r = q."""

    q: int
    a: Fraction
    b: Fraction

    @classmethod
    def of(cls, q, a, b=0):
        return cls(q, Fraction(a), Fraction(b))

    @classmethod
    def zero(cls, q):
        return cls.of(q, 0)

    @classmethod
    def one(cls, q):
        return cls.of(q, 1)

    def _same(self, other):
        if not isinstance(other, SqrtQ) or other.q != self.q:
            raise ValueError("mixed scalar fields")
        return other

    def __add__(self, other):
        o = self._same(other)
        return SqrtQ(self.q, self.a + o.a, self.b + o.b)

    def __sub__(self, other):
        o = self._same(other)
        return SqrtQ(self.q, self.a - o.a, self.b - o.b)

    def __mul__(self, other):
        o = self._same(other)
        return SqrtQ(
            self.q,
            self.a * o.a + self.q * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    def __neg__(self):
        return SqrtQ(self.q, -self.a, -self.b)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_rational(self):
        return self.b == 0

    def inverse(self):
        # norm a^2 - q b^2 vanishes only at 0 (sqrt(q) is irrational)
        n = self.a * self.a - self.q * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("zero scalar")
        return SqrtQ(self.q, self.a / n, -self.b / n)

    def specialize_r(self, r_value=None) -> Fraction:
        if self.b == 0:
            return self.a
        if r_value is None:
            raise ResidualSqrtQ("value contains sqrt(q) but no r value was given")
        return self.a + self.b * Fraction(r_value)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*r"
        return f"{self.a} + {self.b}*r"


class LaurentScalar:
    """Exact Laurent 'polynomial' in alpha, beta, gamma over Q(sqrt(q)).

    Stored as a map from exponent triples (ea, eb, eg) in Z^3 to nonzero
    SqrtQ coefficients.
    """

    __slots__ = ("q", "terms")

    def __init__(self, q, terms=None):
        object.__setattr__(self, "q", q)
        clean = {}
        for exps, coeff in (terms or {}).items():
            if not isinstance(coeff, SqrtQ):
                coeff = SqrtQ.of(q, coeff)
            if coeff.q != q:
                raise ValueError("mixed scalar fields")
            if not coeff.is_zero():
                key = (int(exps[0]), int(exps[1]), int(exps[2]))
                prev = clean.get(key)
                coeff = coeff if prev is None else prev + coeff
                if coeff.is_zero():
                    del clean[key]
                else:
                    clean[key] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentScalar is immutable")

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, q):
        return cls(q)

    @classmethod
    def one(cls, q):
        return cls(q, {(0, 0, 0): SqrtQ.one(q)})

    @classmethod
    def from_fraction(cls, q, x):
        return cls(q, {(0, 0, 0): SqrtQ.of(q, Fraction(x))})

    from_int = from_fraction

    @classmethod
    def monomial(cls, q, exps, coeff=1):
        if not isinstance(coeff, SqrtQ):
            coeff = SqrtQ.of(q, coeff)
        if coeff.is_zero():
            raise ZeroCoefficient("monomial with zero coefficient")
        return cls(q, {tuple(exps): coeff})

    @classmethod
    def alpha(cls, q):
        return cls.monomial(q, (1, 0, 0))

    @classmethod
    def beta(cls, q):
        return cls.monomial(q, (0, 1, 0))

    @classmethod
    def gamma(cls, q):
        return cls.monomial(q, (0, 0, 1))

    @classmethod
    def r(cls, q):
        return cls(q, {(0, 0, 0): SqrtQ.of(q, 0, 1)})

    # structure ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def sorted_terms(self):
        return sorted(self.terms.items())

    # arithmetic -----------------------------------------------------------

    def _same(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentScalar.from_fraction(self.q, other)
        if not isinstance(other, LaurentScalar) or other.q != self.q:
            raise ValueError("mixed scalar fields")
        return other

    def __add__(self, other):
        o = self._same(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            s = out.get(k, SqrtQ.zero(self.q)) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return LaurentScalar(self.q, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._same(other))

    def __neg__(self):
        return LaurentScalar(self.q, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        o = self._same(other)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                s = out.get(k, SqrtQ.zero(self.q)) + v1 * v2
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return LaurentScalar(self.q, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("integer powers only")
        if n < 0:
            return monomial_invert(self) ** (-n)
        out = LaurentScalar.one(self.q)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.from_fraction(self.q, other)
        return (
            isinstance(other, LaurentScalar)
            and self.q == other.q
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash((self.q, tuple(self.sorted_terms())))

    def __repr__(self):
        return f"LaurentScalar(q={self.q}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (ea, eb, eg), coeff in self.sorted_terms():
            factors = []
            for name, e in (("a", ea), ("b", eb), ("g", eg)):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            cs = str(coeff)
            if not factors:
                parts.append(cs if coeff.b == 0 else f"({cs})")
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                cs = cs if coeff.b == 0 and coeff.a >= 0 else f"({cs})"
                parts.append("*".join([cs] + factors))
        return " + ".join(parts)

    # serialization ----------------------------------------------------------

    def to_json(self):
        out = []
        for (ea, eb, eg), c in self.sorted_terms():
            out.append(
                {
                    "ea": ea,
                    "eb": eb,
                    "eg": eg,
                    "num_a": c.a.numerator,
                    "den_a": c.a.denominator,
                    "num_b": c.b.numerator,
                    "den_b": c.b.denominator,
                }
            )
        return out

    @classmethod
    def from_json(cls, q, rows):
        terms = {}
        for row in rows:
            key = (int(row["ea"]), int(row["eb"]), int(row["eg"]))
            terms[key] = SqrtQ(
                q,
                Fraction(int(row["num_a"]), int(row["den_a"])),
                Fraction(int(row["num_b"]), int(row["den_b"])),
            )
        return cls(q, terms)


def scalar_arith(x: LaurentScalar, y, op: str) -> LaurentScalar:
    """Dispatch exact ring operations: op in {"add", "sub", "mul", "neg"}."""
    if op == "neg":
        return -x
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def monomial_invert(x: LaurentScalar) -> LaurentScalar:
    """Invert a single Laurent monomial (negate exponents, invert coefficient)."""
    if len(x.terms) != 1:
        raise NotAMonomial(f"{len(x.terms)} terms")
    ((ea, eb, eg), c), = x.terms.items()
    return LaurentScalar(x.q, {(-ea, -eb, -eg): c.inverse()})


def specialize(x: LaurentScalar, assignment, r_value=None) -> Fraction:
    """Evaluate at rational character values.

    ``assignment`` maps variable names ("alpha", "beta", "gamma") to nonzero
    rationals; only variables that occur with nonzero exponent are required.
    ``r_value`` substitutes sqrt(q) when coefficients involve it; if omitted
    and some coefficient has a sqrt(q) part, ResidualSqrtQ is raised.
    """
    vals = {}
    for name, v in (assignment or {}).items():
        if name not in VARS:
            raise ValueError(f"unknown variable {name!r}")
        v = Fraction(v)
        if v == 0:
            raise ZeroAssignment(f"{name} = 0")
        vals[name] = v
    total = Fraction(0)
    for (ea, eb, eg), coeff in x.terms.items():
        c = coeff.specialize_r(r_value)
        for name, e in (("alpha", ea), ("beta", eb), ("gamma", eg)):
            if e:
                if name not in vals:
                    raise KeyError(f"no value for {name}")
                c *= vals[name] ** e
        total += c
    return total


def monomial_count(x: LaurentScalar, variables) -> int:
    """Number of distinct exponent patterns in the given variables.

    Projects each term's exponent triple onto ``variables`` (a subset of
    alpha/beta/gamma) and counts distinct projections.
    """
    idx = []
    for name in variables:
        if name not in VARS:
            raise ValueError(f"unknown variable {name!r}")
        idx.append(VARS.index(name))
    seen = {tuple(k[i] for i in idx) for k in x.terms}
    return len(seen)
