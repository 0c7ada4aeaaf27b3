"""Stochastic orders on the probability simplex.

Exact dominance probabilities, order predicates and their dimension
reductions, algebraic identity checks, and seeded Monte Carlo estimators,
in float64 or exact rational arithmetic.
"""

from ._version import __version__
from .analytics import (
    SegmentIndex,
    alternating_identity_residual,
    alternating_identity_terms,
    fosd_comparability_probability,
    knuth_power_sum,
    knuth_power_sum_terms,
    mlr_comparability_probability,
    mlr_dominance_probability,
    mlr_dominance_probability_restricted,
    mlr_integral_constant,
    segment_index,
)
from .core import (
    DomainError,
    OrderKind,
    OrderRelation,
    Scalar,
    ScalarMode,
    SimplexOrderError,
    SimplexPoint,
    SimplexVolume,
    SizeLimitError,
    parse_scalar,
    simplex_volume,
    tail_sum,
)
from .monomials import (
    EXACT_FOSD_MAX_N,
    Monomial,
    WeightedMonomial,
    catalan_count,
    enumerate_H,
    evaluate_monomial,
    fosd_dominance_probability,
)
from .montecarlo import (
    GENERATOR_ID,
    EstimateResult,
    SamplerConfig,
    classify_grid,
    comparable_fraction,
    estimate_comparability,
    estimate_dominance,
    estimate_dominance_restricted,
    estimate_integral_mean,
    sample_uniform,
    worker_stream,
)
from .orders import (
    compare,
    fosd_bracket_index,
    fosd_leq,
    fosd_reduce,
    mlr_leq,
    mlr_reduce,
)

__all__ = [
    "__version__",
    "DomainError",
    "EXACT_FOSD_MAX_N",
    "EstimateResult",
    "GENERATOR_ID",
    "Monomial",
    "OrderKind",
    "OrderRelation",
    "Scalar",
    "ScalarMode",
    "SegmentIndex",
    "SimplexOrderError",
    "SimplexPoint",
    "SimplexVolume",
    "SizeLimitError",
    "SamplerConfig",
    "WeightedMonomial",
    "alternating_identity_residual",
    "alternating_identity_terms",
    "catalan_count",
    "classify_grid",
    "comparable_fraction",
    "compare",
    "enumerate_H",
    "estimate_comparability",
    "estimate_dominance",
    "estimate_dominance_restricted",
    "estimate_integral_mean",
    "evaluate_monomial",
    "fosd_bracket_index",
    "fosd_comparability_probability",
    "fosd_dominance_probability",
    "fosd_leq",
    "fosd_reduce",
    "knuth_power_sum",
    "knuth_power_sum_terms",
    "mlr_comparability_probability",
    "mlr_dominance_probability",
    "mlr_dominance_probability_restricted",
    "mlr_integral_constant",
    "mlr_leq",
    "mlr_reduce",
    "parse_scalar",
    "sample_uniform",
    "segment_index",
    "simplex_volume",
    "tail_sum",
    "worker_stream",
]
