"""Radial engine: standard sets of free groups, where every object is constant on spheres."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from group.genset import GenSet
from group.presentation import Free
from ring.element import DEFAULT_SUPPORT_GUARD
from ring.radial import RadialElement, indicator_radial, radial_markov_power
from estimators.moments import MomentSequence, trace_moments
from engines.base import Element, Engine, ExtractedSet, ProgressFn


class RadialEngine(Engine):
    name = "radial"

    def __init__(self, sigma: GenSet, guard: int = DEFAULT_SUPPORT_GUARD):
        p = sigma.presentation
        if not isinstance(p, Free) or not sigma.is_standard():
            raise ValueError(
                f"the radial engine needs the standard set of a free group, got {sigma!r}"
            )
        super().__init__(sigma, guard)
        self.rank = p.rank

    def markov_power(self, k: int) -> Element:
        return radial_markov_power(self.rank, k)

    def extracted_set(self, b: Element) -> ExtractedSet:
        assert isinstance(b, RadialElement)
        spheres = tuple(b.spheres())
        return ExtractedSet(
            size=b.size,
            lengths=spheres,
            outside_sigma=0 if 1 in spheres else len(self.sigma),
            spheres=spheres,
        )

    def set_moments(
        self,
        S: ExtractedSet,
        n_max: int,
        on_progress: Optional[ProgressFn] = None,
    ) -> MomentSequence:
        assert S.spheres is not None
        # integer indicator first, one division per moment
        u = indicator_radial(self.rank, S.spheres)
        counts = trace_moments(u, n_max, on_progress=on_progress)
        values = tuple(
            Fraction(c) / S.size ** (2 * n) for n, c in enumerate(counts.values, 1)
        )
        return MomentSequence(f"m(S) on spheres {list(S.spheres)}", values)
