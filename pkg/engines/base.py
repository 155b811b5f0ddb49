"""Abstract base class for the two computation engines."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

from group.genset import GenSet
from ring.element import DEFAULT_SUPPORT_GUARD, RingElement
from ring.radial import RadialElement
from estimators.moments import MomentSequence

Element = Union[RingElement, RadialElement]
ProgressFn = Callable[[str, int, int], None]


@dataclass(frozen=True)
class ExtractedSet:
    """supp(b) for an extracted one-step element.

    Attributes:
        size:     |S|, exact.
        lengths:  Distinct word lengths occurring in S, ascending.
        words:    The set itself (dense engine).
        spheres:  Sphere distances making up S (radial engine).
        outside_sigma: |Sigma \\ S|.
    """

    size: int
    lengths: Tuple[int, ...]
    outside_sigma: int
    words: Optional[GenSet] = None
    spheres: Optional[Tuple[int, ...]] = None

    @property
    def contains_sigma(self) -> bool:
        return self.outside_sigma == 0

    def to_dict(self) -> dict:
        out = {
            "size": str(self.size),
            "lengths": list(self.lengths),
            "outside_sigma": self.outside_sigma,
        }
        if self.spheres is not None:
            out["spheres"] = list(self.spheres)
        if self.words is not None:
            out["words"] = self.words.text()
        return out


class Engine(ABC):
    """Interface shared by the dense and radial engines.

    An engine is bound to a symmetric set Sigma and computes the objects
    the extraction pipeline needs: m(Sigma)^k, the support of an extracted
    element, and trace moments of the Markov operator on that support.
    """

    name = "engine"

    def __init__(self, sigma: GenSet, guard: int = DEFAULT_SUPPORT_GUARD):
        self.sigma = sigma
        self.guard = guard

    @abstractmethod
    def markov_power(self, k: int) -> Element:
        """Return m(Sigma)^k exactly."""
        ...

    @abstractmethod
    def extracted_set(self, b: Element) -> ExtractedSet:
        """Describe supp(b).

        Parameters
        ----------
        b : RingElement or RadialElement
            An element produced by this engine.
        """
        ...

    @abstractmethod
    def set_moments(
        self,
        S: ExtractedSet,
        n_max: int,
        on_progress: Optional[ProgressFn] = None,
    ) -> MomentSequence:
        """tau(m(S)^{2n}) for n up to *n_max*.

        Engines may return fewer moments when more would exceed the
        support guard; at least one is always returned.
        """
        ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.sigma!r})"
