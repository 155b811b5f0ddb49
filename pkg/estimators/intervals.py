"""Outward-rounded interval helpers on top of ``mpmath.iv``.

Every certified comparison in the package goes through these helpers:
exact rationals enter as intervals, transcendental steps round outward,
and a comparison only counts when it holds for the whole interval.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Union

from mpmath import iv, mp
from mpmath.libmp import round_ceiling, round_floor, to_float

DEFAULT_PRECISION = 128
MIN_PRECISION = 64

Exact = Union[Fraction, int]

_PRECISION_LOCK = threading.RLock()


@contextmanager
def precision(bits: int) -> Iterator[None]:
    """Run the block with ``iv.prec`` and ``mp.prec`` set to *bits*."""
    if bits < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    with _PRECISION_LOCK:
        saved = iv.prec, mp.prec
        iv.prec = bits
        mp.prec = bits
        try:
            yield
        finally:
            iv.prec, mp.prec = saved


def interval(x: Exact):
    """Tightest interval around an exact rational at the current precision."""
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def lower(x) -> float:
    """Largest double not above the interval's lower endpoint."""
    return to_float(x._mpi_[0], rnd=round_floor)


def upper(x) -> float:
    """Smallest double not below the interval's upper endpoint."""
    return to_float(x._mpi_[1], rnd=round_ceiling)


def midpoint(x) -> float:
    return to_float(x.mid._mpi_[0])


def certainly_less(x, y) -> bool:
    """True only if every point of *x* is below every point of *y*."""
    return (x < y) is True


def certainly_leq(x, y) -> bool:
    return (x <= y) is True


def root(x, n: int):
    """x^(1/n) for a nonnegative interval x."""
    if n < 1:
        raise ValueError(f"root index must be >= 1, got {n}")
    if (x <= 0) is True:
        return iv.mpf(0)
    return iv.exp(iv.log(x) / n)


def ln(x):
    return iv.log(x)
