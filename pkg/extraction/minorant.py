"""One-step minorants: b = lambda 1_{a >= lambda} with 0 <= b <= a and a large l1 norm."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import iv

from ring.element import RingElement, l1_norm
from ring.radial import RadialElement, sphere_size
from estimators import intervals
from estimators.intervals import DEFAULT_PRECISION
from estimators.report import CertificateViolation
from extraction.profile import LevelProfile, ThresholdReport, threshold_select

Element = Union[RingElement, RadialElement]


@dataclass(frozen=True)
class Minorant:
    """Result of ``one_step_minorant``.

    Attributes:
        element:   b, of the same kind as the input.
        threshold: Coefficient value of b (the chosen level times ||a||_1).
        l1:        ||b||_1, exact.
        size:      size(b).
        report:    The threshold selection on the normalized profile.
    """

    element: Element
    threshold: Fraction
    l1: Fraction
    size: int
    report: ThresholdReport


def _validate(a: Element) -> None:
    if not a.is_nonnegative():
        raise ValueError("one-step minorant needs nonnegative coefficients")
    if not a.is_hermitean():
        raise ValueError("one-step minorant needs a hermitean element")
    if a.size < 3:
        raise ValueError(f"one-step minorant needs size(a) >= 3, got {a.size}")


def l1_guarantee_holds(b_l1: Fraction, a_l1: Fraction, size: int, bits: int = DEFAULT_PRECISION) -> bool:
    """||b||_1 >= ||a||_1 / (4 ln size), decided in outward-rounded arithmetic."""
    with intervals.precision(bits):
        bound = intervals.interval(a_l1) / (4 * iv.log(size))
        return intervals.certainly_leq(bound, intervals.interval(b_l1))


def one_step_minorant(a: Element, bits: int = DEFAULT_PRECISION) -> Minorant:
    """Hermitean one-step b with 0 <= b <= a and ||b||_1 >= ||a||_1 / (4 ln size(a)).

    Level sets of a hermitean nonnegative element are symmetric, so b is
    hermitean.  Radial inputs give radial outputs; block multiplicities
    are the sphere sizes.
    """
    _validate(a)
    norm = a.l1_norm() if isinstance(a, RadialElement) else l1_norm(a)

    if isinstance(a, RadialElement):
        pairs = [
            (Fraction(c) / norm, sphere_size(a.rank, ell))
            for ell, c in enumerate(a.coefficients)
            if c
        ]
        profile = LevelProfile.from_weighted(pairs)
    else:
        profile = LevelProfile.from_values(c / norm for c in a.values())

    report = threshold_select(profile, bits)
    threshold = report.lambda_ * norm

    if isinstance(a, RadialElement):
        b: Element = RadialElement(
            a.rank, tuple(threshold if c >= threshold else 0 for c in a.coefficients)
        )
    else:
        p = a.presentation
        b = RingElement._from_terms(
            p, {k: threshold for k, c in a.terms.items() if c >= threshold}
        )

    size = b.size
    b_l1 = threshold * size
    if b_l1 != report.objective * norm * profile.total_count:
        raise CertificateViolation("minorant norm does not match the threshold objective")
    if not l1_guarantee_holds(b_l1, norm, a.size, bits):
        raise CertificateViolation(
            f"||b||_1 = {b_l1} is below ||a||_1 / (4 ln {a.size})"
        )
    return Minorant(element=b, threshold=threshold, l1=b_l1, size=size, report=report)
