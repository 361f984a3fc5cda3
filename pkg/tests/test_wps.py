import pytest
from hypothesis import given, strategies as st

from vmanifold.errors import DomainError
from vmanifold.quotient import QuotientType, canonical_cyclic_surface, normalize_cyclic
from vmanifold.wps import WeightVector, chart_type, reduce_weights, singular_vertices_P2

X = QuotientType.cyclic


def test_weight_vector_validation():
    with pytest.raises(DomainError):
        WeightVector((2, 4))
    with pytest.raises(DomainError):
        WeightVector((1, -1))
    with pytest.raises(DomainError):
        WeightVector((1,))


def test_chart_types():
    for i in range(3):
        assert chart_type((1, 1, 1), i).is_trivial_group()
    assert chart_type((1, 1, 2), 2) == X(2, 1, 1)
    assert chart_type((5, 3, 7), 0) == X(5, 3, 7)
    with pytest.raises(DomainError):
        chart_type((1, 2), 2)


def test_reduce_examples():
    r = reduce_weights((2, 3, 4))
    assert r.reduced.weights == (1, 3, 2)
    assert r.d == (1, 2, 1) and r.e == (2, 1, 2)
    assert r.map.exponents == (1, 2, 1)
    r = reduce_weights((1, 1, 1))
    assert r.reduced.weights == (1, 1, 1) and r.is_identity


@given(st.integers(1, 100), st.integers(1, 100))
def test_projective_line_is_always_reduced_to_p1(a, b):
    import math
    g = math.gcd(a, b)
    assert reduce_weights((a // g, b // g)).reduced.weights == (1, 1)


def test_singular_vertices():
    assert singular_vertices_P2((1, 1, 1)) == []
    assert singular_vertices_P2((1, 1, 2)) == [(2, X(2, 1, 1))]
    verts = singular_vertices_P2((2, 3, 5))
    assert [i for i, _ in verts] == [0, 1, 2]
    for (i, t), raw in zip(verts, [X(2, 3, 5), X(3, 2, 5), X(5, 2, 3)]):
        assert t == normalize_cyclic(raw).normalized
    assert [canonical_cyclic_surface(t) for _, t in verts] == [X(2, 1, 1), X(3, 1, 1), X(5, 1, 4)]
    with pytest.raises(DomainError, match="reduce_weights"):
        singular_vertices_P2((2, 3, 4))
