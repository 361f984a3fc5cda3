"""Rational Weil and Cartier divisors on charted quotient spaces.

Each chart of an :class:`Atlas` is a normalized quotient space together with
the reduced local equations of the named divisor components it meets.  A
component V with local equation f on a chart whose group acts on f through
a character of order k becomes the local Cartier piece (1/k) {f^k}; f^k is
a genuine function on the quotient.  Going back, the order of a local
equation along V is the exponent of f in it, because the generic point of V
has trivial stabilizer in a normalized chart.

Local equations are kept in the computable fragment: a monomial times
powers of registered component equations, as a numerator/denominator pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .arith import Residue, format_rational
from .errors import DomainError, IntegrityError, UnsupportedError, UsageError
from .quotient import QuotientType, is_normalized, normalize_cyclic
from .wps import as_weights, chart_type, reduce_weights


class Polynomial:
    """Sparse polynomial with rational coefficients in a fixed number of variables."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars: int):
        clean = {}
        for exps, c in dict(terms).items():
            exps = tuple(int(x) for x in exps)
            if len(exps) != nvars:
                raise DomainError(f"exponent {exps} does not have {nvars} entries")
            if any(x < 0 for x in exps):
                raise DomainError(f"negative exponent in polynomial term {exps}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self.nvars = nvars

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def variable(cls, i, nvars):
        return cls.monomial(tuple(int(j == i) for j in range(nvars)))

    @classmethod
    def constant(cls, c, nvars):
        return cls({(0,) * nvars: c}, nvars)

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def __eq__(self, other):
        return isinstance(other, Polynomial) and (self.nvars, self.terms) == (other.nvars, other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(terms, self.nvars)

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial({m: c * other for m, c in self.terms.items()}, self.nvars)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial(terms, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of a polynomial")
        out = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divide_exact(self, other):
        """Quotient if ``other`` divides ``self`` exactly, else None (lex division)."""
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        lead = max(other.terms)
        lead_c = other.terms[lead]
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = max(rem)
            shift = tuple(x - y for x, y in zip(m, lead))
            if any(s < 0 for s in shift):
                return None
            c = rem[m] / lead_c
            quot[shift] = quot.get(shift, 0) + c
            for m2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(shift, m2))
                v = rem.get(key, 0) - c * c2
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return Polynomial(quot, self.nvars)

    def set_zero(self, i):
        """Restriction to the hyperplane {x_i = 0}."""
        return Polynomial({m: c for m, c in self.terms.items() if m[i] == 0}, self.nvars)

    def format(self, names=None):
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            if not factors:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(format_rational(c) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self.format()})"


# -- characters -------------------------------------------------------------

def character_of_monomial(t: QuotientType, m) -> tuple:
    """Residues by which each group generator scales x^m (Laurent exponents allowed)."""
    m = tuple(m)
    if len(m) != t.dim:
        raise DomainError(f"exponent vector of length {len(m)} on a type of dimension {t.dim}")
    return tuple(
        Residue(sum(a * e for a, e in zip(row, m)), d)
        for d, row in zip(t.orders, t.weights))


def _characters(t, f):
    return {character_of_monomial(t, m) for m in f.terms}


def is_semi_invariant(t: QuotientType, f: Polynomial) -> bool:
    if f.is_zero():
        raise DomainError("the zero polynomial has no character")
    return len(_characters(t, f)) == 1


def is_invariant(t: QuotientType, f: Polynomial) -> bool:
    return is_semi_invariant(t, f) and invariant_power(t, f) == 1


def invariant_power(t: QuotientType, f: Polynomial) -> int:
    """Least k >= 1 such that f**k is invariant, i.e. the order of the character of f."""
    chars = _characters(t, f) if not f.is_zero() else None
    if not chars or len(chars) != 1:
        raise DomainError(
            "polynomial is not semi-invariant: its monomials carry different "
            "characters, so no power of it is a function on the quotient")
    (char,) = chars
    return math.lcm(1, *(c.order() for c in char))


# -- atlases and divisors ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class AtlasChart:
    id: str
    space: QuotientType
    components: Mapping[str, Polynomial]
    variables: tuple = ()

    def __post_init__(self):
        if not self.variables:
            object.__setattr__(self, "variables", tuple(f"x{i}" for i in range(self.space.dim)))


@dataclass(frozen=True, eq=False)
class Atlas:
    charts: tuple

    def __post_init__(self):
        ids = [c.id for c in self.charts]
        if len(set(ids)) != len(ids):
            raise DomainError(f"duplicate chart ids in {ids}")
        for c in self.charts:
            if not is_normalized(c.space):
                raise DomainError(f"chart {c.id}: type {c.space} is not normalized")
            for name, f in c.components.items():
                if f.nvars != c.space.dim:
                    raise DomainError(f"chart {c.id}: equation of {name} has wrong arity")
                if all(not any(m) for m in f.terms):
                    raise DomainError(f"chart {c.id}: equation of {name} is constant")
                if not is_semi_invariant(c.space, f):
                    raise DomainError(f"chart {c.id}: equation of {name} is not semi-invariant")

    def chart(self, chart_id: str) -> AtlasChart:
        for c in self.charts:
            if c.id == chart_id:
                return c
        raise DomainError(f"unknown chart {chart_id!r}")

    def component_ids(self) -> list:
        return sorted({name for c in self.charts for name in c.components})


@dataclass(frozen=True)
class WeilQDivisor:
    coefficients: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: Fraction(v) for k, v in dict(self.coefficients).items() if Fraction(v)}
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    def __add__(self, other):
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, 0) + v
        return WeilQDivisor(out)

    def __rmul__(self, c):
        return WeilQDivisor({k: c * v for k, v in self.coefficients.items()})

    def __str__(self):
        if not self.coefficients:
            return "0"
        return " + ".join(
            (f"[{k}]" if v == 1 else f"{format_rational(v)}*[{k}]")
            for k, v in self.coefficients.items())


@dataclass(frozen=True)
class LocalEquation:
    numerator: Polynomial
    denominator: Polynomial = None

    def __post_init__(self):
        if self.denominator is None:
            object.__setattr__(
                self, "denominator", Polynomial.constant(1, self.numerator.nvars))
        if self.numerator.is_zero() or self.denominator.is_zero():
            raise DomainError("local equations must be nonzero")


@dataclass(frozen=True)
class CartierPiece:
    """``coefficient * {(chart, equation)}``; charts not listed carry the equation 1."""

    coefficient: Fraction
    equations: Mapping[str, LocalEquation]


@dataclass(frozen=True)
class CartierQDivisor:
    pieces: tuple = ()


def weil_to_cartier(atlas: Atlas, D: WeilQDivisor) -> CartierQDivisor:
    known = set(atlas.component_ids())
    unknown = sorted(set(D.coefficients) - known)
    if unknown:
        raise DomainError(f"components {unknown} are not in the atlas")
    pieces = []
    for name, a in D.coefficients.items():
        for chart in atlas.charts:
            f = chart.components.get(name)
            if f is None:
                continue
            k = invariant_power(chart.space, f)
            pieces.append(CartierPiece(a / k, {chart.id: LocalEquation(f ** k)}))
    return CartierQDivisor(tuple(pieces))


def _multiplicity(f: Polynomial, g: Polynomial):
    count = 0
    while True:
        q = f.divide_exact(g)
        if q is None:
            return count, f
        f, count = q, count + 1


def component_orders(chart: AtlasChart, eq: LocalEquation) -> dict:
    """Order of ``eq`` along every component registered in ``chart``."""
    t = chart.space
    for part in (eq.numerator, eq.denominator):
        if not is_invariant(t, part):
            raise DomainError(
                f"chart {chart.id}: {part.format(chart.variables)} is not a function on the quotient")
    num, den = eq.numerator, eq.denominator
    orders = {}
    for name, f in chart.components.items():
        k_num, num = _multiplicity(num, f)
        k_den, den = _multiplicity(den, f)
        orders[name] = k_num - k_den
    if not (num.is_monomial() and den.is_monomial()):
        raise UnsupportedError(
            f"chart {chart.id}: local equation is not a monomial times registered components")
    (m_num,), (m_den,) = num.terms, den.terms
    if any(x != y for x, y in zip(m_num, m_den)):
        raise UnsupportedError(
            f"chart {chart.id}: local equation vanishes along a divisor with no registered component")
    return orders


def associated_weil(atlas: Atlas, C: CartierQDivisor) -> WeilQDivisor:
    totals = {c.id: {} for c in atlas.charts}
    for piece in C.pieces:
        for chart_id, eq in piece.equations.items():
            chart = atlas.chart(chart_id)
            for name, o in component_orders(chart, eq).items():
                acc = totals[chart_id]
                acc[name] = acc.get(name, 0) + piece.coefficient * o
    result = {}
    for name in atlas.component_ids():
        values = {
            Fraction(totals[c.id].get(name, 0))
            for c in atlas.charts if name in c.components}
        if len(values) != 1:
            raise IntegrityError(
                f"component {name} gets different orders in different charts: {sorted(values)}")
        result[name] = values.pop()
    return WeilQDivisor(result)


# -- atlases of the spaces built elsewhere ----------------------------------

def projective_plane_atlas(w) -> Atlas:
    """Charts U0..Un of a reduced P^n_w with components Dj = {x_j = 0}.

    Chart ``Ui`` uses the ambient coordinates other than x_i, in order.
    """
    w = as_weights(w)
    if not reduce_weights(w).is_identity:
        raise DomainError(f"weights {w} are not reduced; call reduce_weights first")
    n1 = len(w)
    charts = []
    for i in range(n1):
        others = [j for j in range(n1) if j != i]
        comps = {f"D{j}": Polynomial.variable(pos, n1 - 1) for pos, j in enumerate(others)}
        charts.append(AtlasChart(f"U{i}", chart_type(w, i), comps, tuple(f"x{j}" for j in others)))
    return Atlas(tuple(charts))


def blowup_dim2_atlas(blowup) -> Atlas:
    """Atlas of a :class:`~vmanifold.blowup.Dim2Blowup` in its normalized charts.

    Components: ``E`` (exceptional), ``Cx`` and ``Cy`` (strict transforms of
    the axes {x=0} and {y=0}).  Q1 has E = {x=0}, Cy = {y=0}; Q2 has
    Cx = {x=0}, E = {y=0}.
    """
    q1, q2 = blowup.charts
    x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
    return Atlas((
        AtlasChart("Q1", q1, {"E": x, "Cy": y}, ("x", "y")),
        AtlasChart("Q2", q2, {"Cx": x, "E": y}, ("x", "y")),
    ))


# -- local intersection numbers ---------------------------------------------

@dataclass(frozen=True)
class VertexIntersection:
    value: Fraction
    vertex: int
    chart: str
    cartier_coefficient: Fraction
    equation: str
    restricted_order: int
    curve_map_exponent: int


def intersect_at_vertex(w, i: int, j: int, detail: bool = False):
    """Local intersection number of {x_i = 0} and {x_j = 0} on a reduced P^2_w.

    D_j is written as a Q-Cartier divisor on the chart of the opposite
    vertex, its local equation is restricted to the curve {x_i = 0} (a
    one-dimensional quotient, normalized to C by a power map), and the
    order at the origin is scaled by the Cartier coefficient.
    """
    w = as_weights(w)
    if len(w) != 3:
        raise DomainError("intersect_at_vertex expects three weights")
    if i == j:
        raise UsageError("the two axes must be distinct")
    if not (0 <= i < 3 and 0 <= j < 3):
        raise UsageError("axis indices must be 0, 1 or 2")
    atlas = projective_plane_atlas(w)
    k = 3 - i - j
    chart = atlas.chart(f"U{k}")
    C = weil_to_cartier(atlas, WeilQDivisor({f"D{j}": 1}))
    (piece,) = [p for p in C.pieces if chart.id in p.equations]
    eq = piece.equations[chart.id]

    pos_i = chart.variables.index(f"x{i}")
    pos_j = chart.variables.index(f"x{j}")
    restricted = eq.numerator.set_zero(pos_i)
    if restricted.is_zero():
        raise IntegrityError("the curve lies inside the divisor")
    curve = QuotientType.cyclic(w[k], w[j])
    (m,) = normalize_cyclic(curve).map.exponents
    low = min(e[pos_j] for e in restricted.terms)
    if low % m:
        raise IntegrityError("restricted equation is not a function on the curve")
    value = piece.coefficient * (low // m)
    if not detail:
        return value
    return VertexIntersection(value, k, chart.id, piece.coefficient,
                              eq.numerator.format(chart.variables), low // m, m)
