"""Certified-direction estimates of spectral radii."""

from estimators.report import (
    BALL_POWER_ITERATION,
    CLOSED_FORM,
    EXACT,
    LOWER,
    POWER_BOUND,
    RATIO_MOMENT,
    ROOT_MOMENT,
    UPPER,
    CertificateViolation,
    EstimateReport,
    OneSidedBound,
    check_order,
)
from estimators.moments import (
    MomentBounds,
    MomentSequence,
    radius_lower_bounds,
    ratio_estimate,
    root_estimate,
    trace_moments,
)
from estimators.power_iteration import ball_power_iteration, radial_power_iteration
from estimators.closed_form import (
    TreeBounds,
    exact_radius,
    kesten_exact_free,
    tree_comparison_bound,
)
from estimators.monte_carlo import WalkEstimate, monte_carlo_return
from estimators.exhaustive import exhaustive_return_counts

__all__ = [
    "BALL_POWER_ITERATION",
    "CLOSED_FORM",
    "EXACT",
    "LOWER",
    "POWER_BOUND",
    "RATIO_MOMENT",
    "ROOT_MOMENT",
    "UPPER",
    "CertificateViolation",
    "EstimateReport",
    "OneSidedBound",
    "check_order",
    "MomentBounds",
    "MomentSequence",
    "radius_lower_bounds",
    "ratio_estimate",
    "root_estimate",
    "trace_moments",
    "ball_power_iteration",
    "radial_power_iteration",
    "TreeBounds",
    "exact_radius",
    "kesten_exact_free",
    "tree_comparison_bound",
    "WalkEstimate",
    "monte_carlo_return",
    "exhaustive_return_counts",
]
