"""Exact arithmetic in group rings: sparse dense-engine elements and radial free-group elements."""

from ring.element import (
    DEFAULT_SUPPORT_GUARD,
    MarkovOperator,
    RingElement,
    SupportGuardExceeded,
    closed_walk_counts,
    convolve,
    delta,
    half_power_traces,
    indicator,
    l1_norm,
    leq_coefficientwise,
    markov,
    markov_count_power,
    power_exact,
    predicted_support_size,
    star,
    trace,
    zero,
)
from ring.radial import (
    NonRadial,
    RadialElement,
    RankMismatch,
    SphereProfile,
    ball_size,
    distance_distribution,
    indicator_radial,
    iter_sphere,
    radial_convolve,
    radial_delta,
    radial_markov_power,
    radial_power,
    radial_zero,
    sphere_size,
    to_dense,
    to_radial,
)

__all__ = [
    "DEFAULT_SUPPORT_GUARD",
    "MarkovOperator",
    "RingElement",
    "SupportGuardExceeded",
    "closed_walk_counts",
    "convolve",
    "delta",
    "half_power_traces",
    "indicator",
    "l1_norm",
    "leq_coefficientwise",
    "markov",
    "markov_count_power",
    "power_exact",
    "predicted_support_size",
    "star",
    "trace",
    "zero",
    "NonRadial",
    "RadialElement",
    "RankMismatch",
    "SphereProfile",
    "ball_size",
    "distance_distribution",
    "indicator_radial",
    "iter_sphere",
    "radial_convolve",
    "radial_delta",
    "radial_markov_power",
    "radial_power",
    "radial_zero",
    "sphere_size",
    "to_dense",
    "to_radial",
]
