"""Exact computations on abelian quotient singularities, weighted projective
spaces, weighted blow-ups and rational Weil/Cartier divisors."""

from .errors import (DomainError, IntegrityError, ResourceError, UnsupportedError,
                     UsageError, VManifoldError)
from .quotient import (Move, MoveKind, MonomialMap, NormalizationResult, QuotientType,
                       apply_move, canonical_cyclic_surface, enumerate_image_group,
                       is_free_on_torus, is_normalized, is_small, normalize_cyclic,
                       reduced_small_image_order, stabilizer_order_cyclic, to_upper_triangular)
from .wps import WeightVector, chart_type, reduce_weights, singular_vertices_P2
from .blowup import (blowup_charts_quotient, blowup_charts_smooth, blowup_dim2_normalized,
                     blowup_dim3_report, brieskorn_qresolution)
from .divisors import (Atlas, AtlasChart, CartierQDivisor, Polynomial, WeilQDivisor,
                       associated_weil, character_of_monomial, intersect_at_vertex,
                       invariant_power, is_semi_invariant, weil_to_cartier)

__version__ = "0.1.0"
