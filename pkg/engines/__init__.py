"""Pluggable computation engines for the extraction pipeline."""

from engines.base import Engine, ExtractedSet
from engines.dense import DenseEngine
from engines.radial import RadialEngine

from group.genset import GenSet
from group.presentation import Free
from ring.element import DEFAULT_SUPPORT_GUARD

ENGINE_CHOICES = ("auto", "dense", "radial")


def select_engine(
    sigma: GenSet, choice: str = "auto", guard: int = DEFAULT_SUPPORT_GUARD
) -> Engine:
    """Resolve ``auto`` to radial iff Sigma is the standard set of a free group."""
    if choice not in ENGINE_CHOICES:
        raise ValueError(f"unknown engine {choice!r}; expected one of {', '.join(ENGINE_CHOICES)}")
    if choice == "auto":
        radial = isinstance(sigma.presentation, Free) and sigma.is_standard()
        choice = "radial" if radial else "dense"
    if choice == "radial":
        return RadialEngine(sigma, guard)
    return DenseEngine(sigma, guard)


__all__ = [
    "ENGINE_CHOICES",
    "DenseEngine",
    "Engine",
    "ExtractedSet",
    "RadialEngine",
    "select_engine",
]
