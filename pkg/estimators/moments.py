"""Trace moments tau(a^{2n}) and the lower bounds they give for ||a||."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple, Union

from ring.element import (
    DEFAULT_SUPPORT_GUARD,
    MarkovOperator,
    RingElement,
    closed_walk_counts,
    half_power_traces,
)
from ring.radial import RadialElement, iter_walk_counts, radial_convolve
from estimators import intervals
from estimators.intervals import DEFAULT_PRECISION
from estimators.report import LOWER, RATIO_MOMENT, ROOT_MOMENT, EstimateReport

ProgressFn = Callable[[str, int, int], None]


@dataclass(frozen=True)
class MomentSequence:
    """tau(a^{2n}) for n = 1..n_max, exact.

    Attributes:
        description: Human-readable name of the element.
        values:      ``values[n - 1]`` is tau(a^{2n}).
        l1_norm:     ||a||_1, bounding every root estimate.
    """

    description: str
    values: Tuple[Fraction, ...]
    l1_norm: Fraction = Fraction(1)
    exact: bool = True

    @property
    def n_max(self) -> int:
        return len(self.values)

    def moment(self, n: int) -> Fraction:
        """tau(a^{2n}); n = 0 gives tau(1) = 1."""
        if n == 0:
            return Fraction(1)
        return self.values[n - 1]

    def is_log_convex(self) -> bool:
        """tau_{2n}^2 <= tau_{2n-2} tau_{2n+2} for every interior n, exact."""
        return all(
            self.moment(n) ** 2 <= self.moment(n - 1) * self.moment(n + 1)
            for n in range(1, self.n_max)
        )

    def in_range(self) -> bool:
        return all(0 <= v <= self.l1_norm ** (2 * n) for n, v in enumerate(self.values, 1))


def _is_standard_radial_markov(a: RadialElement) -> bool:
    return a.coefficients == (0, Fraction(1, 2 * a.rank))


def _radial_moments(a: RadialElement, n_max: int, on_progress: Optional[ProgressFn]) -> List[Fraction]:
    if _is_standard_radial_markov(a):
        # tau(m^{2n}) is the probability of being back at the root after 2n steps
        out: List[Fraction] = []
        base = 2 * a.rank
        for k, counts in iter_walk_counts(a.rank, 2 * n_max):
            if k and k % 2 == 0:
                out.append(Fraction(counts[0], base**k))
        return out

    out = []
    x = a
    for n in range(1, n_max + 1):
        if n > 1:
            x = radial_convolve(a.rank, x, a)
        out.append(x.square_trace())
        if on_progress is not None:
            on_progress("moments", n, n_max)
    return out


def trace_moments(
    a: Union[RingElement, RadialElement],
    n_max: int,
    guard: int = DEFAULT_SUPPORT_GUARD,
    description: str = "",
    on_progress: Optional[ProgressFn] = None,
) -> MomentSequence:
    """Exact tau(a^{2n}) for n = 1..n_max of a hermitean element."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if not a.is_hermitean():
        raise ValueError("trace moments need a hermitean element")

    if isinstance(a, RadialElement):
        values = _radial_moments(a, n_max, on_progress)
        norm = a.l1_norm()
    elif isinstance(a, MarkovOperator):
        size = len(a.source)
        counts = closed_walk_counts(a.source, n_max, guard)
        values = [Fraction(c, size ** (2 * n)) for n, c in enumerate(counts, 1)]
        norm = Fraction(1)
    else:
        values = half_power_traces(a, n_max, guard)
        norm = Fraction(sum((abs(c) for c in a.values()), 0))
    return MomentSequence(description or repr(a), tuple(values), norm)


# ---- lower bounds -----------------------------------------------------------


def root_estimate(m: MomentSequence, n: int, bits: int = DEFAULT_PRECISION) -> EstimateReport:
    """tau_{2n}^{1/2n} <= ||a||, rounded down."""
    with intervals.precision(bits):
        x = intervals.root(intervals.interval(m.moment(n)), 2 * n)
        low, high = intervals.lower(x), intervals.upper(x)
    return EstimateReport(
        value=low,
        direction=LOWER,
        method=ROOT_MOMENT,
        parameters={"n": n, "precision": bits},
        low=low,
        high=high,
    )


def ratio_estimate(m: MomentSequence, n: int, bits: int = DEFAULT_PRECISION) -> EstimateReport:
    """(tau_{2n} / tau_{2n-2})^{1/2} <= ||a||, rounded down.

    The ratio of consecutive even moments of a measure on [-||a||, ||a||]
    never exceeds ||a||^2, and by log-convexity it is nondecreasing in n.
    """
    if n < 2 or n > m.n_max:
        raise ValueError(f"ratio estimate needs 2 <= n <= {m.n_max}, got {n}")
    prev = m.moment(n - 1)
    if prev == 0:
        low = high = 0.0
    else:
        with intervals.precision(bits):
            x = intervals.root(intervals.interval(m.moment(n) / prev), 2)
            low, high = intervals.lower(x), intervals.upper(x)
    return EstimateReport(
        value=low,
        direction=LOWER,
        method=RATIO_MOMENT,
        parameters={"n": n, "precision": bits},
        low=low,
        high=high,
    )


@dataclass
class MomentBounds:
    """Both lower-bound families of a moment sequence."""

    root: List[EstimateReport] = field(default_factory=list)
    ratio: List[EstimateReport] = field(default_factory=list)

    @property
    def best(self) -> EstimateReport:
        return self.ratio[-1]


def radius_lower_bounds(m: MomentSequence, bits: int = DEFAULT_PRECISION) -> MomentBounds:
    """Root estimates for n = 1..n_max and ratio estimates for n = 2..n_max."""
    if m.n_max < 2:
        raise ValueError("the ratio family needs at least 2 moments")
    return MomentBounds(
        root=[root_estimate(m, n, bits) for n in range(1, m.n_max + 1)],
        ratio=[ratio_estimate(m, n, bits) for n in range(2, m.n_max + 1)],
    )
