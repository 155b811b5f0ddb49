"""Threshold selection, one-step minorants and certified small-radius sets."""

from extraction.profile import (
    LevelProfile,
    ProfileError,
    SharpnessCase,
    ThresholdReport,
    block_objectives,
    discretized_profile,
    sharpness_scan,
    sharpness_series,
    threshold_select,
)
from extraction.minorant import Minorant, l1_guarantee_holds, one_step_minorant
from extraction.certificate import (
    AugmentedSet,
    EpsilonReport,
    EpsilonRow,
    EstimatorParams,
    GammaReport,
    SkCertificate,
    augment_with_sigma,
    epsilon_certificate,
    epsilon_scan,
    gamma_for_certificates,
    gamma_free_series,
    gamma_upper_bound,
    generate_range,
    generate_sk,
    power_bound_interval,
    rho_sigma_report,
    smallest_k_below,
)

__all__ = [
    "LevelProfile",
    "ProfileError",
    "SharpnessCase",
    "ThresholdReport",
    "block_objectives",
    "discretized_profile",
    "sharpness_scan",
    "sharpness_series",
    "threshold_select",
    "Minorant",
    "l1_guarantee_holds",
    "one_step_minorant",
    "AugmentedSet",
    "EpsilonReport",
    "EpsilonRow",
    "EstimatorParams",
    "GammaReport",
    "SkCertificate",
    "augment_with_sigma",
    "epsilon_certificate",
    "epsilon_scan",
    "gamma_for_certificates",
    "gamma_free_series",
    "gamma_upper_bound",
    "generate_range",
    "generate_sk",
    "power_bound_interval",
    "rho_sigma_report",
    "smallest_k_below",
]
