"""Weighted projective spaces P^n_w: affine charts, weight reduction, singular vertices."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import gcd_list, lcm_list
from .errors import DomainError
from .quotient import MonomialMap, QuotientType, normalize_cyclic


@dataclass(frozen=True)
class WeightVector:
    weights: tuple

    def __post_init__(self):
        w = tuple(int(q) for q in self.weights)
        if len(w) < 2:
            raise DomainError("a weight vector needs at least two entries")
        if any(q <= 0 for q in w):
            raise DomainError(f"weights must be positive, got {list(w)}")
        if math.gcd(*w) != 1:
            raise DomainError(f"weights {list(w)} are not coprime")
        object.__setattr__(self, "weights", w)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __str__(self):
        return ",".join(str(q) for q in self.weights)


def as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(tuple(w))


@dataclass(frozen=True)
class WeightReduction:
    d: tuple
    e: tuple
    reduced: WeightVector
    map: MonomialMap

    @property
    def is_identity(self) -> bool:
        return all(x == 1 for x in self.d)


def chart_type(w, i: int) -> QuotientType:
    """Type of the chart {x_i != 0}: X(q_i; q_0, ..., q_i omitted, ..., q_n)."""
    w = as_weights(w)
    if not 0 <= i < len(w):
        raise DomainError(f"chart index {i} out of range for {len(w)} weights")
    others = [q for j, q in enumerate(w) if j != i]
    return QuotientType.cyclic(w[i], *others)


def reduce_weights(w) -> WeightReduction:
    w = as_weights(w)
    q = w.weights
    idx = range(len(q))
    d = tuple(gcd_list(q[j] for j in idx if j != i) for i in idx)
    e = tuple(lcm_list(d[j] for j in idx if j != i) for i in idx)
    reduced = WeightVector(tuple(qi // ei for qi, ei in zip(q, e)))
    return WeightReduction(d, e, reduced, MonomialMap(d))


def singular_vertices_P2(w) -> list:
    """``[(vertex index, normalized type)]`` for the singular vertices of a reduced plane."""
    w = as_weights(w)
    if len(w) != 3:
        raise DomainError("singular_vertices_P2 expects three weights")
    if not reduce_weights(w).is_identity:
        raise DomainError(f"weights {w} are not reduced; call reduce_weights first")
    out = []
    for i, q in enumerate(w):
        if q == 1:
            continue
        t = normalize_cyclic(chart_type(w, i)).normalized
        if t.orders[0] > 1:
            out.append((i, t))
    return out
