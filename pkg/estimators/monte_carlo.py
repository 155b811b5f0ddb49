"""Seeded Monte Carlo estimate of the return probability tau(m(S)^steps)."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from group.genset import GenSet
from group.presentation import GroupPresentation, Key

ProgressFn = Callable[[str, int, int], None]

BLOCK_SIZE = 10_000
GENERATOR = "PCG64"


@dataclass(frozen=True)
class WalkEstimate:
    """Return frequency of simulated walks and its standard error."""

    frequency: float
    stderr: float
    hits: int
    trials: int
    steps: int
    seed: int
    generator: str = GENERATOR


def _block_hits(args: Tuple[GroupPresentation, Tuple[Key, ...], int, int, int, int]) -> int:
    """Count returns among *count* walks; block *block* of seed *seed*."""
    p, keys, steps, count, seed, block = args
    rng = np.random.Generator(np.random.PCG64([seed, block]))
    choices = rng.integers(0, len(keys), size=(count, steps))
    mul = p.mul_keys
    e = p.identity_key
    hits = 0
    for row in choices:
        g = e
        for i in row:
            g = mul(g, keys[i])
        if g == e:
            hits += 1
    return hits


def _blocks(trials: int) -> List[int]:
    full, rest = divmod(trials, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def monte_carlo_return(
    S: GenSet,
    steps: int,
    trials: int,
    seed: int = 0,
    workers: int = 1,
    on_progress: Optional[ProgressFn] = None,
) -> WalkEstimate:
    """Fraction of uniform *steps*-letter words over S that evaluate to e.

    Trials are split into blocks of ``BLOCK_SIZE``; block b draws from
    ``Generator(PCG64([seed, b]))``, so the result does not depend on *workers*.
    """
    if steps < 0 or steps % 2:
        raise ValueError("steps must be even")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if len(S) == 0:
        raise ValueError("cannot walk on an empty set")

    p = S.presentation
    keys = S.keys()
    jobs = [(p, keys, steps, count, seed, b) for b, count in enumerate(_blocks(trials))]

    hits = 0
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for done, h in enumerate(pool.map(_block_hits, jobs), 1):
                hits += h
                if on_progress is not None:
                    on_progress("walk", done, len(jobs))
    else:
        for done, job in enumerate(jobs, 1):
            hits += _block_hits(job)
            if on_progress is not None:
                on_progress("walk", done, len(jobs))

    f = hits / trials
    return WalkEstimate(
        frequency=f,
        stderr=math.sqrt(f * (1.0 - f) / trials),
        hits=hits,
        trials=trials,
        steps=steps,
        seed=seed,
    )
