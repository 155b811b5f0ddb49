"""Dense engine: exact sparse group-ring arithmetic for any supported presentation."""

from __future__ import annotations

from typing import Optional

from group.genset import GenSet
from ring.element import RingElement, markov, power_exact, predicted_support_size
from estimators.moments import MomentSequence, trace_moments
from engines.base import Element, Engine, ExtractedSet, ProgressFn


class DenseEngine(Engine):
    name = "dense"

    def markov_power(self, k: int) -> Element:
        return power_exact(markov(self.sigma), k, self.guard)

    def extracted_set(self, b: Element) -> ExtractedSet:
        assert isinstance(b, RingElement)
        p = self.sigma.presentation
        words = GenSet(p, tuple(b.support()))
        present = set(words.words)
        return ExtractedSet(
            size=len(words),
            lengths=tuple(sorted({len(w) for w in words})),
            outside_sigma=sum(1 for s in self.sigma if s not in present),
            words=words,
        )

    def feasible_order(self, S: GenSet, n_max: int) -> int:
        """Largest n <= n_max whose half power stays under the guard (at least 1)."""
        p = S.presentation
        n = n_max
        while n > 1 and predicted_support_size(p, len(S), S.max_length, n) > self.guard:
            n -= 1
        return n

    def set_moments(
        self,
        S: ExtractedSet,
        n_max: int,
        on_progress: Optional[ProgressFn] = None,
    ) -> MomentSequence:
        assert S.words is not None
        n = self.feasible_order(S.words, n_max)
        return trace_moments(
            markov(S.words),
            n,
            self.guard,
            description=f"m(S) on {S.size} words",
            on_progress=on_progress,
        )
