"""Power iteration for ||m(S)|| on the span of a finite Cayley ball.

The truncated operator P m(S) P is a compression of m(S), so every
quotient ||P m(S) P v|| / ||v|| is a lower bound for rho(S).  Cayley
graphs are often bipartite (<v, M v> = 0 on the walk started at the
identity), so the iteration tracks the norm ratio, i.e. the square root
of the Rayleigh quotient of M^2, rather than <v, M v>.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from group.ball import CayleyBall
from group.genset import GenSet
from group.presentation import Free
from estimators.report import BALL_POWER_ITERATION, LOWER, EstimateReport

ProgressFn = Callable[[str, int, int], None]

DEFAULT_ITERATIONS = 2000
DEFAULT_TOLERANCE = 1e-12
DEFAULT_BALL_GUARD = 2_000_000


def _iterate(matrix, iters: int, tol: float, on_progress: Optional[ProgressFn]):
    """Run from the first basis vector; return ``(best_ratio, iterations_used)``."""
    v = np.zeros(matrix.shape[0])
    v[0] = 1.0
    best = 0.0
    previous = None
    used = 0
    for used in range(1, iters + 1):
        w = matrix @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            break
        ratio = norm  # ||v|| == 1
        best = max(best, ratio)
        if previous is not None and abs(ratio - previous) < tol:
            break
        previous = ratio
        v = w / norm
        if on_progress is not None and used % 100 == 0:
            on_progress("power-iteration", used, iters)
    return best, used


def radial_truncation(r: int, radius: int):
    """The standard Markov operator of F_r on radial functions of the ball, orthonormal sphere basis.

    Tridiagonal: 1/sqrt(2r) between spheres 0 and 1, sqrt(2r-1)/(2r) further out.
    """
    if radius == 0:
        return sp.csr_array((1, 1))
    off = np.full(radius, math.sqrt(2 * r - 1) / (2 * r))
    off[0] = 1.0 / math.sqrt(2 * r)
    return sp.diags([off, off], [-1, 1], format="csr")


def radial_power_iteration(
    r: int,
    radius: int,
    iters: int = DEFAULT_ITERATIONS,
    tol: float = DEFAULT_TOLERANCE,
    on_progress: Optional[ProgressFn] = None,
) -> EstimateReport:
    """``ball_power_iteration`` for the standard set of F_r, reduced to sphere averages.

    The walk started at the identity stays radial, so the iteration on the
    radius-R ball equals the one on its R + 1 spheres.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    best, used = _iterate(radial_truncation(r, radius), iters, tol, on_progress)
    return EstimateReport(
        value=best,
        direction=LOWER,
        method=BALL_POWER_ITERATION,
        parameters={
            "radius": radius,
            "iterations": used,
            "tol": tol,
            "reduction": "radial",
            "basis_size": radius + 1,
        },
    )


def ball_power_iteration(
    S: GenSet,
    radius: int,
    iters: int = DEFAULT_ITERATIONS,
    tol: float = DEFAULT_TOLERANCE,
    guard: int = DEFAULT_BALL_GUARD,
    on_progress: Optional[ProgressFn] = None,
) -> EstimateReport:
    """Lower bound for rho(S) from the radius-R ball, started at delta_e.

    The ratio sequence need not be monotone; the maximum seen is reported.
    """
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    p = S.presentation
    if isinstance(p, Free) and S.is_standard():
        return radial_power_iteration(p.rank, radius, iters, tol, on_progress)

    ball = CayleyBall(S, radius, guard)
    best, used = _iterate(ball.transition_matrix(), iters, tol, on_progress)
    return EstimateReport(
        value=best,
        direction=LOWER,
        method=BALL_POWER_ITERATION,
        parameters={
            "radius": radius,
            "iterations": used,
            "tol": tol,
            "reduction": "ball",
            "basis_size": len(ball),
        },
    )
