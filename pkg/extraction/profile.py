"""Level profiles of nonnegative elements and the threshold that maximizes x f(x).

A ``LevelProfile`` is the decreasing rearrangement of a coefficient
multiset: a step function f on [0, 1] whose n-th block has width
1/total_count and height equal to the n-th largest value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from mpmath import iv

from estimators import intervals
from estimators.intervals import DEFAULT_PRECISION
from estimators.report import CertificateViolation

GUARANTEE_RANGE = Fraction(1, 3)


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class LevelProfile:
    """Strictly decreasing ``(value, multiplicity)`` blocks.

    Attributes:
        levels: ``((value, multiplicity), ...)`` with values in (0, 1].
    """

    levels: Tuple[Tuple[Fraction, int], ...]

    def __post_init__(self):
        if not self.levels:
            raise ProfileError("profile is empty")
        previous = None
        for value, mult in self.levels:
            if value <= 0:
                raise ProfileError(f"level value {value} is not positive")
            if value > 1:
                raise ProfileError(f"level value {value} exceeds 1 after normalization")
            if mult < 1:
                raise ProfileError(f"multiplicity {mult} is not positive")
            if previous is not None and value >= previous:
                raise ProfileError("level values must be strictly decreasing")
            previous = value

    @staticmethod
    def from_values(values: Iterable[Fraction]) -> "LevelProfile":
        """Group a multiset of values into blocks (zeros dropped)."""
        counts: dict = {}
        for v in values:
            v = Fraction(v)
            if v:
                counts[v] = counts.get(v, 0) + 1
        return LevelProfile(tuple(sorted(counts.items(), reverse=True)))

    @staticmethod
    def from_weighted(pairs: Iterable[Tuple[Fraction, int]]) -> "LevelProfile":
        """Merge ``(value, multiplicity)`` pairs that share a value."""
        counts: dict = {}
        for v, m in pairs:
            v = Fraction(v)
            if v and m:
                counts[v] = counts.get(v, 0) + m
        return LevelProfile(tuple(sorted(counts.items(), reverse=True)))

    @property
    def total_mass(self) -> Fraction:
        return sum((v * m for v, m in self.levels), Fraction(0))

    @property
    def total_count(self) -> int:
        return sum(m for _, m in self.levels)

    @property
    def integral(self) -> Fraction:
        """I = int_0^1 f."""
        return self.total_mass / self.total_count


@dataclass(frozen=True)
class ThresholdReport:
    """Chosen threshold block of a profile.

    Attributes:
        chosen_level_index: Index of the selected block.
        lambda_:   f(x0), the selected level value.
        x0:        Cumulative count fraction at the block's right end.
        objective: x0 * f(x0).
        integral:  I = int f.
        alpha:     1 / (-4 ln I), or None when I > 1/3.
        guarantee: I / (-4 ln I) rounded up, or None when I > 1/3.
        guarantee_met: True, or None when the guarantee does not apply.
    """

    chosen_level_index: int
    lambda_: Fraction
    x0: Fraction
    objective: Fraction
    integral: Fraction
    alpha: Optional[float]
    guarantee: Optional[float]
    guarantee_met: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "chosen_level_index": self.chosen_level_index,
            "lambda": self.lambda_,
            "x0": self.x0,
            "objective": self.objective,
            "I": self.integral,
            "alpha": self.alpha,
            "guarantee": self.guarantee,
            "guarantee_met": self.guarantee_met,
        }


def block_objectives(profile: LevelProfile) -> List[Fraction]:
    """x f(x) at the right end of every block."""
    n = profile.total_count
    out = []
    cumulative = 0
    for value, mult in profile.levels:
        cumulative += mult
        out.append(Fraction(cumulative, n) * value)
    return out


def threshold_select(profile: LevelProfile, bits: int = DEFAULT_PRECISION) -> ThresholdReport:
    """Maximize x f(x) over block right-endpoints; ties go to the later block.

    When I <= 1/3 the maximum is at least I / (-4 ln I); this is checked in
    outward-rounded arithmetic and a failure raises ``CertificateViolation``.
    """
    objectives = block_objectives(profile)
    best = 0
    for i, obj in enumerate(objectives):
        if obj >= objectives[best]:
            best = i

    n = profile.total_count
    cumulative = sum(m for _, m in profile.levels[: best + 1])
    integral = profile.integral
    objective = objectives[best]

    alpha = guarantee = met = None
    if integral <= GUARANTEE_RANGE:
        with intervals.precision(bits):
            i_iv = intervals.interval(integral)
            denom = -4 * iv.log(i_iv)
            bound = i_iv / denom
            if not intervals.certainly_leq(bound, intervals.interval(objective)):
                raise CertificateViolation(
                    f"threshold objective {objective} is below the guarantee "
                    f"{intervals.upper(bound)} for I = {integral}"
                )
            alpha = intervals.midpoint(1 / denom)
            guarantee = intervals.upper(bound)
            met = True

    return ThresholdReport(
        chosen_level_index=best,
        lambda_=profile.levels[best][0],
        x0=Fraction(cumulative, n),
        objective=objective,
        integral=integral,
        alpha=alpha,
        guarantee=guarantee,
        guarantee_met=met,
    )


# ---- the family f_n(x) = min(1, 1/(n x)) --------------------------------------


def discretized_profile(n: int, grid: int) -> LevelProfile:
    """f_n sampled at i / grid for i = 1..grid, equal values merged."""
    if n < 1 or grid < 1:
        raise ValueError(f"need n >= 1 and grid >= 1, got n={n}, grid={grid}")
    return LevelProfile.from_values(
        min(Fraction(1), Fraction(grid, n * i)) for i in range(1, grid + 1)
    )


@dataclass(frozen=True)
class SharpnessCase:
    """Closed-form figures for f_n.

    Attributes:
        integral:  I_n = (1 + ln n) / n.
        objective: max_x x f_n(x) = 1/n.
        ratio:     objective / I_n = 1 / (1 + ln n).
        guarantee: I_n / (-4 ln I_n), or None when I_n > 1/3.
    """

    n: int
    integral: float
    objective: float
    ratio: float
    guarantee: Optional[float]
    guarantee_met: Optional[bool]
    discrete: Optional[ThresholdReport] = None

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "I": self.integral,
            "objective": self.objective,
            "ratio": self.ratio,
            "guarantee": self.guarantee,
            "guarantee_met": self.guarantee_met,
        }
        if self.discrete is not None:
            out["discrete"] = self.discrete.to_dict()
        return out


def sharpness_scan(n: int, grid: Optional[int] = None, bits: int = DEFAULT_PRECISION) -> SharpnessCase:
    """Evaluate f_n(x) = min(1, 1/(n x)); optionally cross-check on a grid."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    with intervals.precision(bits):
        i_iv = (1 + iv.log(n)) / n
        obj_iv = iv.mpf(1) / n
        ratio_iv = 1 / (1 + iv.log(n))
        guarantee = met = None
        if intervals.certainly_leq(i_iv, intervals.interval(GUARANTEE_RANGE)):
            bound = i_iv / (-4 * iv.log(i_iv))
            if not intervals.certainly_leq(bound, obj_iv):
                raise CertificateViolation(f"f_{n}: objective 1/{n} below the guarantee")
            guarantee = intervals.upper(bound)
            met = True
        integral = intervals.midpoint(i_iv)
        objective = intervals.midpoint(obj_iv)
        ratio = intervals.midpoint(ratio_iv)

    discrete = threshold_select(discretized_profile(n, grid), bits) if grid else None
    return SharpnessCase(n, integral, objective, ratio, guarantee, met, discrete)


def sharpness_series(ns: Sequence[int], grid: Optional[int] = None) -> List[SharpnessCase]:
    """Scan several n; the ratio must strictly decrease along increasing n."""
    ordered = sorted(set(ns))
    cases = [sharpness_scan(n, grid) for n in ordered]
    for a, b in zip(cases, cases[1:]):
        if not b.ratio < a.ratio:
            raise CertificateViolation(
                f"ratio did not decrease from n={a.n} ({a.ratio}) to n={b.n} ({b.ratio})"
            )
    return cases
