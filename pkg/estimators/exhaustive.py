"""Brute-force oracle: enumerate every word of a given length over S."""

from __future__ import annotations

from itertools import product

from group.genset import GenSet

MAX_WORDS = 10_000_000


def exhaustive_return_counts(S: GenSet, steps: int) -> int:
    """Number of the |S|^steps words s_1...s_steps that equal e."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    total = len(S) ** steps
    if total > MAX_WORDS:
        raise ValueError(
            f"exhaustive enumeration of {total} words exceeds the limit of {MAX_WORDS}"
        )
    p = S.presentation
    keys = S.keys()
    e = p.identity_key
    count = 0
    for word in product(keys, repeat=steps):
        g = e
        for s in word:
            g = p.mul_keys(g, s)
        if g == e:
            count += 1
    return count
