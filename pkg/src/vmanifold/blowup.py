"""Weighted blow-ups of C^{n+1} and of cyclic quotient spaces at the origin.

Chart ``i`` of the w-blow-up is the quotient space whose coordinates map to
the ambient ones by x_j -> x_i**p_j * x_j (j != i) and x_i -> x_i**p_i.  The
exponent table of that substitution is stored with the chart, row ``j``
giving the exponent vector of ambient coordinate ``j``; the exceptional
divisor is {x_i = 0}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import mod_inverse
from .errors import DomainError
from .quotient import QuotientType, normalize_cyclic
from .wps import WeightReduction, as_weights, reduce_weights


@dataclass(frozen=True)
class BlowupChart:
    index: int
    space: QuotientType
    substitution: tuple
    exceptional_coordinate: int


def _substitution(w, i):
    n1 = len(w)
    table = []
    for j in range(n1):
        row = [0] * n1
        row[i] = w[j]
        if j != i:
            row[j] = 1
        table.append(tuple(row))
    return tuple(table)


def blowup_charts_smooth(w) -> list:
    """Charts X(p_i; p_0, ..., -1 at slot i, ..., p_n) of the w-blow-up of C^{n+1}."""
    w = as_weights(w)
    charts = []
    for i, p in enumerate(w):
        weights = [-1 if j == i else q for j, q in enumerate(w)]
        charts.append(BlowupChart(i, QuotientType.cyclic(p, *weights), _substitution(w, i), i))
    return charts


def blowup_charts_quotient(t: QuotientType, w) -> list:
    """Two-row chart types of the w-blow-up of a cyclic X(d; a_0, ..., a_n)."""
    w = as_weights(w)
    if not t.is_cyclic:
        raise DomainError("blowup_charts_quotient expects a cyclic type")
    if t.dim != len(w):
        raise DomainError(f"type of dimension {t.dim} but {len(w)} weights")
    d, a = t.orders[0], t.weights[0]
    charts = []
    for i, p in enumerate(w):
        top = [-1 if j == i else q for j, q in enumerate(w)]
        bottom = [a[i] if j == i else p * a[j] - w[j] * a[i] for j in range(len(w))]
        space = QuotientType((p, p * d), (tuple(top), tuple(bottom)))
        charts.append(BlowupChart(i, space, _substitution(w, i), i))
    return charts


@dataclass(frozen=True)
class Dim2Blowup:
    input: QuotientType
    weights: tuple
    e: int
    beta: int
    mu: int
    charts: tuple
    exceptional_reduction: tuple


def blowup_dim2_normalized(t: QuotientType, w) -> Dim2Blowup:
    """(p,q)-blow-up of the origin of a normalized X(d; a, b), charts in normalized form.

    First chart X(pd/e; 1, (-q + beta*p*b)/e) in coordinates (x^e, y), second
    chart X(qd/e; (-p + mu*q*a)/e, 1) in coordinates (x, y^e), where
    e = gcd(d, pb - qa) and beta*a = mu*b = 1 mod d.
    """
    w = as_weights(w)
    if len(w) != 2:
        raise DomainError("blowup_dim2_normalized expects two weights")
    if not (t.is_cyclic and t.dim == 2):
        raise DomainError(f"{t} is not a cyclic surface type")
    p, q = w
    d, (a, b) = t.orders[0], t.weights[0]
    if math.gcd(d, a) != 1 or math.gcd(d, b) != 1:
        raise DomainError(f"{t} is not normalized")
    e = math.gcd(d, p * b - q * a)
    beta, mu = mod_inverse(a, d), mod_inverse(b, d)
    first = QuotientType.cyclic(p * d // e, 1, (-q + beta * p * b) // e)
    second = QuotientType.cyclic(q * d // e, (-p + mu * q * a) // e, 1)
    return Dim2Blowup(t, (p, q), e, beta, mu, (first, second), (d * q // e, d * p // e))


@dataclass(frozen=True)
class Dim3Report:
    weights: tuple
    origin_raw: tuple
    origin_types: tuple
    axis_raw: tuple
    axis_types: tuple
    exceptional_reduction: WeightReduction

    @property
    def singular_axes(self) -> list:
        return [i for i, t in enumerate(self.axis_types) if t.orders[0] > 1]


def blowup_dim3_report(w) -> Dim3Report:
    w = as_weights(w)
    if len(w) != 3:
        raise DomainError("blowup_dim3_report expects three weights")
    p, q, r = w
    origin_raw = tuple(c.space for c in blowup_charts_smooth(w))
    origin = tuple(normalize_cyclic(s).normalized for s in origin_raw)
    axis_raw = (
        QuotientType.cyclic(math.gcd(q, r), p, -1),
        QuotientType.cyclic(math.gcd(p, r), q, -1),
        QuotientType.cyclic(math.gcd(p, q), r, -1),
    )
    axis = tuple(normalize_cyclic(s).normalized for s in axis_raw)
    return Dim3Report(w.weights, origin_raw, origin, axis_raw, axis, reduce_weights(w))


@dataclass(frozen=True)
class BrieskornReport:
    exponents: tuple
    weights: tuple
    origin_types: tuple
    axis_types: tuple
    exceptional: WeightReduction
    strict_transform: str
    blowup: Dim3Report


def brieskorn_qresolution(a: int, b: int, c: int) -> BrieskornReport:
    """Weighted blow-up data resolving x^a + y^b + z^c = 0 for pairwise coprime a, b, c."""
    if min(a, b, c) < 1:
        raise DomainError("Brieskorn exponents must be positive")
    if math.gcd(a, b) != 1 or math.gcd(a, c) != 1 or math.gcd(b, c) != 1:
        raise DomainError(f"exponents {(a, b, c)} are not pairwise coprime")
    report = blowup_dim3_report((b * c, a * c, a * b))
    return BrieskornReport(
        exponents=(a, b, c),
        weights=report.weights,
        origin_types=report.origin_raw,
        axis_types=report.axis_raw,
        exceptional=report.exceptional_reduction,
        # recorded as a statement; the strict transform is not computed
        strict_transform="meets the exceptional plane P^2 in a generic line",
        blowup=report,
    )
