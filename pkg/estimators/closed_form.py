"""Closed-form spectral radii and the regular-tree comparison bound."""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import iv

from group.genset import GenSet
from group.presentation import Free
from estimators import intervals
from estimators.intervals import DEFAULT_PRECISION
from estimators.report import CLOSED_FORM, EXACT, EstimateReport


def kesten_interval(n_pairs: int):
    """sqrt(2n - 1) / n as an interval at the current precision."""
    return iv.sqrt(iv.mpf(2 * n_pairs - 1)) / n_pairs


def kesten_exact_free(n_pairs: int, bits: int = DEFAULT_PRECISION) -> EstimateReport:
    """rho of the standard symmetric set of F_n: sqrt(2n - 1) / n."""
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be >= 1, got {n_pairs}")
    with intervals.precision(bits):
        x = kesten_interval(n_pairs)
        low, high = intervals.lower(x), intervals.upper(x)
        mid = intervals.midpoint(x)
    return EstimateReport(
        value=mid,
        direction=EXACT,
        method=CLOSED_FORM,
        parameters={"n_pairs": n_pairs, "formula": "sqrt(2n-1)/n", "precision": bits},
        low=low,
        high=high,
    )


def exact_radius(S: GenSet, bits: int = DEFAULT_PRECISION):
    """Exact rho(S) when a closed form is known, else None."""
    p = S.presentation
    if isinstance(p, Free) and S.is_standard():
        return kesten_exact_free(p.rank, bits)
    return None


@dataclass(frozen=True)
class TreeBounds:
    """Lower bounds for rho(S) in terms of |S| alone.

    Attributes:
        coarse_bound:  |S|^{-1/2}.
        refined_bound: 2 sqrt(|S| - 1) / |S|, the rho of the |S|-regular tree.
    """

    set_size: int
    coarse_bound: float
    refined_bound: float


def tree_comparison_bound(set_size: int) -> TreeBounds:
    if set_size < 1:
        raise ValueError(f"set_size must be >= 1, got {set_size}")
    return TreeBounds(
        set_size=set_size,
        coarse_bound=set_size ** -0.5,
        refined_bound=2.0 * (set_size - 1) ** 0.5 / set_size,
    )
