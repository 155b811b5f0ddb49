"""Spectral-radius estimates that always carry the side they are certified on."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

# Directions
LOWER = "lower"
UPPER = "upper"
EXACT = "exact"
DIRECTIONS = (LOWER, UPPER, EXACT)

# Methods
ROOT_MOMENT = "root-moment"
RATIO_MOMENT = "ratio-moment"
BALL_POWER_ITERATION = "ball-power-iteration"
CLOSED_FORM = "closed-form"
POWER_BOUND = "theorem1-bound"
METHODS = (ROOT_MOMENT, RATIO_MOMENT, BALL_POWER_ITERATION, CLOSED_FORM, POWER_BOUND)


class OneSidedBound(ValueError):
    """A lower bound was offered where an upper (or exact) value is required."""


class CertificateViolation(AssertionError):
    """A proven inequality failed on computed data; only a bug can cause this."""


@dataclass(frozen=True)
class EstimateReport:
    """An estimate of rho(S) = ||m(S)||.

    Attributes:
        value:      Nonnegative double, rounded toward the certified side
                    (down for ``lower``, up for ``upper``).
        direction:  ``lower``, ``upper`` or ``exact``.
        method:     One of ``METHODS``.
        parameters: Inputs that produced the value (n, radius, iterations, precision, ...).
        low, high:  Directed-rounded enclosure of the computed quantity when known.
    """

    value: float
    direction: str
    method: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    low: Optional[float] = None
    high: Optional[float] = None

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {self.direction!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.value < 0:
            raise ValueError(f"estimate must be nonnegative, got {self.value}")

    @property
    def bounds_above(self) -> bool:
        return self.direction in (UPPER, EXACT)

    @property
    def bounds_below(self) -> bool:
        return self.direction in (LOWER, EXACT)

    def upper_value(self) -> float:
        """A value known to be >= rho; refuses lower-only reports."""
        if not self.bounds_above:
            raise OneSidedBound(
                f"{self.method} gives only a lower bound; an upper bound or exact value is needed"
            )
        return self.high if self.high is not None else self.value

    def lower_value(self) -> float:
        if not self.bounds_below:
            raise OneSidedBound(f"{self.method} gives only an upper bound")
        return self.low if self.low is not None else self.value

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "value": self.value,
            "direction": self.direction,
            "method": self.method,
            "parameters": dict(self.parameters),
        }
        if self.low is not None:
            out["low"] = self.low
        if self.high is not None:
            out["high"] = self.high
        return out


def check_order(lower_report: EstimateReport, upper_report: EstimateReport) -> None:
    """Raise ``CertificateViolation`` if a lower estimate crosses an upper one."""
    if lower_report.lower_value() > upper_report.upper_value():
        raise CertificateViolation(
            f"lower estimate {lower_report.value} ({lower_report.method}) exceeds "
            f"upper estimate {upper_report.value} ({upper_report.method})"
        )
