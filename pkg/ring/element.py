"""Exact sparse group-ring elements of R[G].

Coefficients are ``fractions.Fraction``; elements are immutable and keyed
by presentation keys (see ``group.presentation``).  Powers of Markov
operators run on integer walk counts and divide by |S|^k once at the end.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

import numpy as np

from group.genset import GenSet
from group.presentation import (
    FreeAbelian,
    GroupPresentation,
    Key,
    PresentationMismatch,
)
from group.word import IDENTITY, Word, format_word, word_sort_key

Coefficient = Union[Fraction, int]

DEFAULT_SUPPORT_GUARD = 2_000_000


class SupportGuardExceeded(ValueError):
    def __init__(self, predicted: int, limit: int):
        super().__init__(
            f"predicted support of {predicted} words exceeds the guard of {limit}; "
            "use the radial engine for free groups or raise the guard"
        )
        self.predicted = predicted
        self.limit = limit


class RingElement:
    """Finitely supported a = sum a_g g with exact rational coefficients."""

    __slots__ = ("presentation", "_terms")

    def __init__(
        self,
        presentation: GroupPresentation,
        coefficients: Mapping[Word, Coefficient] | None = None,
    ):
        terms: Dict[Key, Fraction] = {}
        for word, c in (coefficients or {}).items():
            key = presentation.to_key(word)
            terms[key] = terms.get(key, Fraction(0)) + Fraction(c)
        self.presentation = presentation
        self._terms = {k: c for k, c in terms.items() if c != 0}

    @classmethod
    def _from_terms(
        cls, presentation: GroupPresentation, terms: Dict[Key, Fraction]
    ) -> "RingElement":
        out = RingElement.__new__(RingElement)
        out.presentation = presentation
        out._terms = terms
        return out

    # ---- views ------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def coefficients(self) -> Dict[Word, Fraction]:
        p = self.presentation
        return {p.from_key(k): c for k, c in self._terms.items()}

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(self.presentation.to_key(word), Fraction(0))

    def support(self) -> List[Word]:
        p = self.presentation
        return sorted((p.from_key(k) for k in self._terms), key=word_sort_key)

    @property
    def size(self) -> int:
        return len(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def values(self) -> List[Fraction]:
        return list(self._terms.values())

    # ---- predicates -------------------------------------------------------

    def is_hermitean(self) -> bool:
        inv = self.presentation.inv_key
        return all(self._terms.get(inv(k)) == c for k, c in self._terms.items())

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def is_one_step(self) -> bool:
        return len(set(self._terms.values())) == 1

    # ---- arithmetic ------------------------------------------------------

    def _check(self, other: "RingElement") -> None:
        if other.presentation != self.presentation:
            raise PresentationMismatch(
                f"{self.presentation.spec_string()} vs {other.presentation.spec_string()}"
            )

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return RingElement._from_terms(
            self.presentation, {k: c for k, c in terms.items() if c != 0}
        )

    def __neg__(self) -> "RingElement":
        return RingElement._from_terms(
            self.presentation, {k: -c for k, c in self._terms.items()}
        )

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scaled(self, factor: Coefficient) -> "RingElement":
        factor = Fraction(factor)
        if factor == 0:
            return zero(self.presentation)
        return RingElement._from_terms(
            self.presentation, {k: c * factor for k, c in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return convolve(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.presentation == other.presentation and self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        shown = ", ".join(
            f"{format_word(w)}: {self.coefficient(w)}" for w in self.support()[:8]
        )
        more = ", ..." if self.size > 8 else ""
        return f"RingElement({self.presentation.spec_string()}, {{{shown}{more}}})"


class MarkovOperator(RingElement):
    """m(S) = (1/|S|) sum_{s in S} s, remembering its source set."""

    __slots__ = ("source",)

    def __init__(self, S: GenSet):
        if len(S) == 0:
            raise ValueError("Markov operator of an empty set is undefined")
        weight = Fraction(1, len(S))
        self.presentation = S.presentation
        self._terms = {k: weight for k in S.keys()}
        self.source = S


# ---- constructors ---------------------------------------------------------


def zero(p: GroupPresentation) -> RingElement:
    return RingElement._from_terms(p, {})


def delta(p: GroupPresentation, word: Word = IDENTITY) -> RingElement:
    return RingElement(p, {word: 1})


def indicator(p: GroupPresentation, words: Iterable[Word]) -> RingElement:
    return RingElement._from_terms(p, {p.to_key(w): Fraction(1) for w in words})


def markov(S: GenSet) -> MarkovOperator:
    return MarkovOperator(S)


# ---- ring operations ------------------------------------------------------


def convolve(a: RingElement, b: RingElement) -> RingElement:
    """(a*b)_w = sum over u v = w of a_u b_v."""
    a._check(b)
    mul = a.presentation.mul_keys
    out: Dict[Key, Fraction] = {}
    get = out.get
    for u, x in a._terms.items():
        for v, y in b._terms.items():
            w = mul(u, v)
            out[w] = get(w, 0) + x * y
    return RingElement._from_terms(a.presentation, {k: c for k, c in out.items() if c != 0})


def star(a: RingElement) -> RingElement:
    inv = a.presentation.inv_key
    return RingElement._from_terms(a.presentation, {inv(k): c for k, c in a._terms.items()})


def trace(a: RingElement) -> Fraction:
    return Fraction(a._terms.get(a.presentation.identity_key, 0))


def l1_norm(a: RingElement) -> Fraction:
    return Fraction(sum((abs(c) for c in a._terms.values()), 0))


def leq_coefficientwise(b: RingElement, a: RingElement) -> bool:
    """True iff b_g <= a_g for every g."""
    a._check(b)
    keys = set(a._terms) | set(b._terms)
    return all(b._terms.get(k, 0) <= a._terms.get(k, 0) for k in keys)


def predicted_support_size(
    p: GroupPresentation, size: int, max_length: int, k: int
) -> int:
    """Upper bound on size(a^k) from size(a) and the longest support word."""
    return min(size**k, p.ball_size_bound(k * max_length))


def _guard(p: GroupPresentation, size: int, max_length: int, k: int, guard: int) -> None:
    predicted = predicted_support_size(p, size, max_length, k)
    if predicted > guard:
        raise SupportGuardExceeded(predicted, guard)


def _max_key_length(a: RingElement) -> int:
    p = a.presentation
    return max((p.key_length(k) for k in a._terms), default=0)


def power_exact(
    a: RingElement, k: int, guard: int = DEFAULT_SUPPORT_GUARD
) -> RingElement:
    """Exact k-fold convolution a^k."""
    if k < 1:
        raise ValueError(f"power must be >= 1, got {k}")
    p = a.presentation
    _guard(p, a.size, _max_key_length(a), k, guard)

    if isinstance(a, MarkovOperator):
        counts = markov_count_power(a.source, k)
        scale = Fraction(1, len(a.source) ** k)
        return RingElement._from_terms(p, {g: c * scale for g, c in counts.items()})

    result = a
    for _ in range(k - 1):
        result = convolve(result, a)
    return result


# ---- integer walk counts -------------------------------------------------


def iter_count_powers(S: GenSet, k_max: int) -> Iterator[Tuple[int, Dict[Key, int]]]:
    """Yield ``(j, counts)`` with counts the coefficients of u(S)^j, j = 0..k_max."""
    p = S.presentation
    steps = S.keys()
    mul = p.mul_keys
    counts: Dict[Key, int] = {p.identity_key: 1}
    yield 0, counts
    for j in range(1, k_max + 1):
        nxt: Dict[Key, int] = {}
        get = nxt.get
        for g, c in counts.items():
            for s in steps:
                h = mul(g, s)
                nxt[h] = get(h, 0) + c
        counts = nxt
        yield j, counts


class _AbelianCounts:
    """u(S)^j for S in Z^d as a dense box of exact integers (numpy objects).

    Index ``half + x`` along each axis holds exponent ``x``; after j steps
    only the window of radius ``reach * j`` is populated.
    """

    def __init__(self, S: GenSet, k_max: int):
        self.vectors = list(S.keys())
        self.d = S.presentation.rank
        self.reach = max((max(abs(x) for x in v) for v in self.vectors), default=0)
        self.half = self.reach * k_max
        size = 2 * self.half + 1
        self.counts = np.zeros((size,) * self.d, dtype=object)
        self.counts[(self.half,) * self.d] = 1
        self.j = 0

    def window(self, j: int) -> Tuple[slice, ...]:
        r = self.reach * j
        return (slice(self.half - r, self.half + r + 1),) * self.d

    def step(self) -> None:
        src = self.window(self.j)
        lo = self.half - self.reach * self.j
        hi = self.half + self.reach * self.j + 1
        nxt = np.zeros_like(self.counts)
        for v in self.vectors:
            dst = tuple(slice(lo + x, hi + x) for x in v)
            nxt[dst] += self.counts[src]
        self.counts = nxt
        self.j += 1

    def closed_pairs(self) -> int:
        """sum_g c(g) c(-g): the identity coefficient of (u^j)^2."""
        w = self.counts[self.window(self.j)]
        return int((w * np.flip(w)).sum())

    def as_dict(self) -> Dict[Key, int]:
        out: Dict[Key, int] = {}
        for idx in zip(*np.nonzero(self.counts)):
            out[tuple(int(i) - self.half for i in idx)] = int(self.counts[idx])
        return out


def markov_count_power(S: GenSet, k: int) -> Dict[Key, int]:
    """Coefficients of u(S)^k as exact integers."""
    if isinstance(S.presentation, FreeAbelian):
        box = _AbelianCounts(S, k)
        for _ in range(k):
            box.step()
        return box.as_dict()
    counts: Dict[Key, int] = {}
    for _, counts in iter_count_powers(S, k):
        pass
    return counts


def closed_walk_counts(
    S: GenSet, n_max: int, guard: int = DEFAULT_SUPPORT_GUARD
) -> List[int]:
    """Number of closed walks of length 2n for n = 1..n_max.

    Uses half powers: tau(u^{2n}) = sum_g (u^n)_g (u^n)_{g^-1}.
    """
    p = S.presentation
    _guard(p, len(S), S.max_length, n_max, guard)
    out: List[int] = []
    if isinstance(p, FreeAbelian):
        box = _AbelianCounts(S, n_max)
        for _ in range(n_max):
            box.step()
            out.append(box.closed_pairs())
        return out

    inv = p.inv_key
    for j, counts in iter_count_powers(S, n_max):
        if j == 0:
            continue
        out.append(sum(c * counts.get(inv(g), 0) for g, c in counts.items()))
    return out


def half_power_traces(
    a: RingElement, n_max: int, guard: int = DEFAULT_SUPPORT_GUARD
) -> List[Fraction]:
    """tau(a^{2n}) for n = 1..n_max via tau(x x) = sum_g x_g x_{g^-1}, x = a^n."""
    p = a.presentation
    _guard(p, a.size, _max_key_length(a), n_max, guard)
    inv = p.inv_key
    out: List[Fraction] = []
    x = a
    for n in range(1, n_max + 1):
        if n > 1:
            x = convolve(x, a)
        out.append(Fraction(sum((c * x._terms.get(inv(g), 0) for g, c in x._terms.items()), 0)))
    return out
