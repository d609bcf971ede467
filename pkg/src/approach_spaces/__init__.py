"""Finite approach spaces via ultrafilter convergence.

Costs live in the quantale ``[0, inf]`` (exact rationals and a tagged
infinity), relations compose by min-plus, and a finite space is a square
cost matrix.  :mod:`.expcheck` decides the exponentiability criterion.
"""

__version__ = "0.1.0"

from .quantale import INF, ZERO, Cost, add, inf_of, join, meet, ominus, parse_cost, sup_of
from .numrel import NumRel, PointSet, compose, converse, from_map, identity, leq, scale_join
from .ultra import FinUltrafilter, extend, extend_literal, extU_pullback, mult, unit
from .approach import (ApproachSpace, DistanceView, InvalidSpace, check_axioms,
                       check_delta_axioms, conv_from_dist, discrete, dist_from_conv,
                       from_preorder, halfline, is_contraction, metric_closure,
                       one_point, phi_uv, product, triangle_check, ultrafilter_check)
from .exponential import (ContractionFn, ProbeFamily, check_umaxact, contraction_fn,
                          d_bruteforce, d_principal, replay_theorem)
from .expcheck import (check_exponentiable_exact, check_exponentiable_grid,
                       classify_finite, criterion_sides, decide_pair)
from .reports import CheckReport, Witness

__all__ = [
    "__version__", "INF", "ZERO", "Cost", "add", "inf_of", "join", "meet", "ominus",
    "parse_cost", "sup_of", "NumRel", "PointSet", "compose", "converse", "from_map",
    "identity", "leq", "scale_join", "FinUltrafilter", "extend", "extend_literal",
    "extU_pullback", "mult", "unit", "ApproachSpace", "DistanceView", "InvalidSpace",
    "check_axioms", "check_delta_axioms", "conv_from_dist", "discrete", "dist_from_conv",
    "from_preorder", "halfline", "is_contraction", "metric_closure", "one_point", "phi_uv",
    "product", "triangle_check", "ultrafilter_check", "ContractionFn", "ProbeFamily",
    "check_umaxact", "contraction_fn", "d_bruteforce", "d_principal", "replay_theorem",
    "check_exponentiable_exact", "check_exponentiable_grid", "classify_finite",
    "criterion_sides", "decide_pair", "CheckReport", "Witness",
]
