import math

import pytest

from vmanifold.blowup import (blowup_charts_quotient, blowup_charts_smooth, blowup_dim2_normalized,
                              blowup_dim3_report, brieskorn_qresolution)
from vmanifold.errors import DomainError
from vmanifold.quotient import (Move, QuotientType, apply_move, canonical_cyclic_surface,
                                cyclic_reduction, normalize_cyclic, simplify_rows)

X = QuotientType.cyclic


def test_smooth_charts():
    for c in blowup_charts_smooth((1, 1, 1)):
        assert c.space.is_trivial_group()
    a, b = blowup_charts_smooth((3, 5))
    assert a.space == X(3, -1, 5) and b.space == X(5, 3, -1)
    assert a.substitution == ((3, 0), (5, 1))
    assert b.substitution == ((1, 3), (0, 5))
    charts = blowup_charts_smooth((2, 3, 5))
    assert [c.space for c in charts] == [X(2, -1, 3, 5), X(3, 2, -1, 5), X(5, 2, 3, -1)]
    with pytest.raises(DomainError):
        blowup_charts_smooth((2, 4))


def test_quotient_charts():
    c1, c2 = blowup_charts_quotient(X(7, 2, 3), (4, 5))
    assert c1.space == QuotientType((4, 28), ((-1, 5), (2, 4 * 3 - 5 * 2)))
    assert c2.space == QuotientType((5, 35), ((4, -1), (5 * 2 - 4 * 3, 3)))


def test_quotient_charts_of_trivial_type_are_smooth_charts():
    for c, s in zip(blowup_charts_quotient(X(1, 0, 0), (2, 3)), blowup_charts_smooth((2, 3))):
        # second row is (p; 0, 0): inverse ScaleRow makes it trivial, then it is dropped
        assert c.space.weights[1] == (0, 0)
        assert simplify_rows(c.space) == s.space


def test_a1_chart_normalizes_to_c2():
    c1, _ = blowup_charts_quotient(X(2, 1, 1), (1, 1))
    assert c1.space == QuotientType((1, 2), ((-1, 1), (1, 0)))
    assert cyclic_reduction(c1.space).normalized.is_trivial_group()


def test_dim2_examples():
    b = blowup_dim2_normalized(X(2, 1, 1), (1, 1))
    assert b.e == 2
    assert all(c.is_trivial_group() for c in b.charts)
    assert b.exceptional_reduction == (1, 1)

    b = blowup_dim2_normalized(X(1, 0, 0), (3, 5))
    assert b.e == 1 and b.beta == 0
    assert b.charts[0] == X(3, 1, -5)
    assert apply_move(b.charts[0], Move.multiply_row(0, -1)) == X(3, -1, 5)

    b = blowup_dim2_normalized(X(3, 1, 1), (1, 2))
    assert (b.e, b.beta, b.mu) == (1, 1, 1)
    assert b.charts == (X(3, 1, 2), X(6, 1, 1))
    assert b.exceptional_reduction == (6, 3)
    oracle = cyclic_reduction(blowup_charts_quotient(X(3, 1, 1), (1, 2))[1].space)
    assert oracle.normalized == X(6, 1, 1)


def test_dim2_preconditions():
    with pytest.raises(DomainError):
        blowup_dim2_normalized(X(4, 2, 1), (1, 1))
    with pytest.raises(DomainError):
        blowup_dim2_normalized(X(3, 1, 1), (2, 4))
    with pytest.raises(DomainError):
        blowup_dim2_normalized(X(3, 1, 1, 1), (1, 1, 1))


def test_dim2_small_sweep_against_oracle():
    for d in range(1, 10):
        for a in range(d):
            for b in range(d):
                if math.gcd(d, a) != 1 or math.gcd(d, b) != 1:
                    continue
                for p, q in [(1, 1), (1, 2), (3, 2), (2, 5)]:
                    t = X(d, a, b)
                    ours = blowup_dim2_normalized(t, (p, q)).charts
                    raw = blowup_charts_quotient(t, (p, q))
                    for c, r in zip(ours, raw):
                        oracle = normalize_cyclic(cyclic_reduction(r.space).normalized).normalized
                        assert canonical_cyclic_surface(c) == canonical_cyclic_surface(oracle)


def test_dim3_report():
    rep = blowup_dim3_report((1, 1, 1))
    assert rep.singular_axes == []
    assert all(t.is_trivial_group() for t in rep.origin_types)

    rep = blowup_dim3_report((2, 3, 5))
    assert rep.singular_axes == []
    assert rep.origin_raw == (X(2, -1, 3, 5), X(3, 2, -1, 5), X(5, 2, 3, -1))
    assert rep.origin_types == rep.origin_raw

    rep = blowup_dim3_report((15, 10, 6))
    assert rep.axis_raw == (X(2, 15, -1), X(3, 10, -1), X(5, 6, -1))
    assert rep.singular_axes == [0, 1, 2]
    assert rep.exceptional_reduction.reduced.weights == (1, 1, 1)


def test_brieskorn():
    rep = brieskorn_qresolution(2, 3, 5)
    assert rep.weights == (15, 10, 6)
    assert rep.origin_types == (X(15, -1, 10, 6), X(10, 15, -1, 6), X(6, 15, 10, -1))
    rep = brieskorn_qresolution(1, 1, 1)
    assert rep.weights == (1, 1, 1)
    assert all(t.is_trivial_group() for t in rep.origin_types)
    rep = brieskorn_qresolution(2, 3, 7)
    assert rep.weights == (21, 14, 6)
    assert rep.axis_types == (X(2, 21, -1), X(3, 14, -1), X(7, 6, -1))
    with pytest.raises(DomainError):
        brieskorn_qresolution(2, 4, 5)
