"""Group presentations with closed-form confluent normal forms.

Three families are supported: free groups, free products of cyclic
groups and free abelian groups.  Each presentation also exposes a *key*
codec: the compact hashable form group-ring elements are keyed by.  For
free groups and free products the key is the normal-form word itself;
for ``Z^d`` it is the exponent vector, so that long abelian words hash
in O(d).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import comb
from typing import List, Tuple

from group.word import (
    IDENTITY,
    MAX_RANK,
    InvalidGenerator,
    ParseError,
    Word,
)

Key = Tuple[int, ...]


class PresentationMismatch(ValueError):
    pass


class GroupPresentation(ABC):
    """Interface shared by the three supported group families."""

    # ---- codec -----------------------------------------------------------

    @abstractmethod
    def to_key(self, word: Word) -> Key:
        """Normalize *word* and return its key."""

    @abstractmethod
    def from_key(self, key: Key) -> Word:
        """Return the normal-form word of *key*."""

    @abstractmethod
    def mul_keys(self, u: Key, v: Key) -> Key:
        ...

    @abstractmethod
    def inv_key(self, u: Key) -> Key:
        ...

    @abstractmethod
    def key_length(self, key: Key) -> int:
        """Word length of the normal form behind *key*."""

    @property
    @abstractmethod
    def identity_key(self) -> Key:
        ...

    # ---- structure -------------------------------------------------------

    @abstractmethod
    def generator_count(self) -> int:
        ...

    @abstractmethod
    def generator_order(self, index: int) -> int:
        """Order of generator *index*; 0 means infinite."""

    @abstractmethod
    def spec_string(self) -> str:
        ...

    @abstractmethod
    def ball_size_bound(self, radius: int) -> int:
        """Upper bound on the number of elements of word length <= *radius*."""

    @property
    def has_length_parity(self) -> bool:
        """True if word length mod 2 is a homomorphism to Z/2."""
        return all(
            self.generator_order(i) % 2 == 0
            for i in range(1, self.generator_count() + 1)
        )

    # ---- group law on words ---------------------------------------------

    def validate(self, word: Word) -> None:
        n = self.generator_count()
        for x in word:
            if x == 0 or abs(x) > n:
                raise InvalidGenerator(
                    f"generator index {abs(x)} is not valid for {self.spec_string()}"
                )

    def normal_form(self, word: Word) -> Word:
        return self.from_key(self.to_key(word))

    def multiply(self, w1: Word, w2: Word) -> Word:
        return self.from_key(self.mul_keys(self.to_key(w1), self.to_key(w2)))

    def invert(self, word: Word) -> Word:
        return self.from_key(self.inv_key(self.to_key(word)))

    def is_normal(self, word: Word) -> bool:
        return self.normal_form(word) == tuple(word)

    def standard_set_words(self) -> List[Word]:
        """Each generator and its inverse (order-2 generators appear once)."""
        out: List[Word] = []
        for i in range(1, self.generator_count() + 1):
            out.append(self.normal_form((i,)))
            inverse = self.normal_form((-i,))
            if inverse != out[-1]:
                out.append(inverse)
        return out

    def __str__(self) -> str:
        return self.spec_string()


def _check_rank(rank: int, label: str) -> None:
    if not 1 <= rank <= MAX_RANK:
        raise ValueError(f"{label} rank must be in 1..{MAX_RANK}, got {rank}")


@dataclass(frozen=True)
class Free(GroupPresentation):
    """Free group F_r; normal form is free reduction."""

    rank: int

    def __post_init__(self):
        _check_rank(self.rank, "free group")

    def to_key(self, word: Word) -> Key:
        self.validate(word)
        stack: List[int] = []
        for x in word:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        return tuple(stack)

    def from_key(self, key: Key) -> Word:
        return key

    def mul_keys(self, u: Key, v: Key) -> Key:
        i = 0
        n = min(len(u), len(v))
        while i < n and u[-1 - i] == -v[i]:
            i += 1
        return u[: len(u) - i] + v[i:]

    def inv_key(self, u: Key) -> Key:
        return tuple(-x for x in reversed(u))

    def key_length(self, key: Key) -> int:
        return len(key)

    @property
    def identity_key(self) -> Key:
        return IDENTITY

    def generator_count(self) -> int:
        return self.rank

    def generator_order(self, index: int) -> int:
        return 0

    def spec_string(self) -> str:
        return f"free:{self.rank}"

    def ball_size_bound(self, radius: int) -> int:
        if radius <= 0:
            return 1
        q = 2 * self.rank - 1
        if q == 1:
            return 2 * radius + 1
        return 1 + 2 * self.rank * (q**radius - 1) // (q - 1)


@dataclass(frozen=True)
class FreeProductCyclic(GroupPresentation):
    """Free product of cyclic groups Z/m_1 * ... * Z/m_s (m_i = 0: Z).

    Normal form is the syllable form with every exponent reduced to the
    symmetric residue in (-m/2, m/2], so word length equals Cayley length
    for the natural generators.
    """

    orders: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        _check_rank(len(self.orders), "free product")
        for m in self.orders:
            if m != 0 and m < 2:
                raise ValueError(f"cyclic factor order must be 0 or >= 2, got {m}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    def _canonical(self, g: int, e: int) -> int:
        m = self.orders[g - 1]
        if m == 0:
            return e
        r = e % m
        if 2 * r > m:
            r -= m
        return r

    def to_key(self, word: Word) -> Key:
        self.validate(word)
        syllables: List[List[int]] = []
        for x in word:
            g = abs(x)
            step = 1 if x > 0 else -1
            if syllables and syllables[-1][0] == g:
                e = self._canonical(g, syllables[-1][1] + step)
                if e:
                    syllables[-1][1] = e
                else:
                    syllables.pop()
            else:
                e = self._canonical(g, step)
                if e:
                    syllables.append([g, e])

        out: List[int] = []
        for g, e in syllables:
            out.extend([g if e > 0 else -g] * abs(e))
        return tuple(out)

    def from_key(self, key: Key) -> Word:
        return key

    def mul_keys(self, u: Key, v: Key) -> Key:
        return self.to_key(u + v)

    def inv_key(self, u: Key) -> Key:
        return self.to_key(tuple(-x for x in reversed(u)))

    def key_length(self, key: Key) -> int:
        return len(key)

    @property
    def identity_key(self) -> Key:
        return IDENTITY

    def generator_count(self) -> int:
        return len(self.orders)

    def generator_order(self, index: int) -> int:
        return self.orders[index - 1]

    def spec_string(self) -> str:
        return "fpc:" + ",".join(str(m) for m in self.orders)

    def ball_size_bound(self, radius: int) -> int:
        q = sum(1 if m == 2 else 2 for m in self.orders)
        return sum(q**ell for ell in range(max(radius, 0) + 1))


@dataclass(frozen=True)
class FreeAbelian(GroupPresentation):
    """Free abelian group Z^d; keys are exponent vectors."""

    rank: int

    def __post_init__(self):
        _check_rank(self.rank, "free abelian")

    def to_key(self, word: Word) -> Key:
        self.validate(word)
        exps = [0] * self.rank
        for x in word:
            exps[abs(x) - 1] += 1 if x > 0 else -1
        return tuple(exps)

    def from_key(self, key: Key) -> Word:
        out: List[int] = []
        for i, e in enumerate(key, start=1):
            out.extend([i if e > 0 else -i] * abs(e))
        return tuple(out)

    def mul_keys(self, u: Key, v: Key) -> Key:
        return tuple(a + b for a, b in zip(u, v))

    def inv_key(self, u: Key) -> Key:
        return tuple(-a for a in u)

    def key_length(self, key: Key) -> int:
        return sum(abs(a) for a in key)

    @property
    def identity_key(self) -> Key:
        return (0,) * self.rank

    def generator_count(self) -> int:
        return self.rank

    def generator_order(self, index: int) -> int:
        return 0

    def spec_string(self) -> str:
        return f"zd:{self.rank}"

    def ball_size_bound(self, radius: int) -> int:
        radius = max(radius, 0)
        return sum(
            2**i * comb(self.rank, i) * comb(radius, i)
            for i in range(min(self.rank, radius) + 1)
        )


def parse_presentation(text: str) -> GroupPresentation:
    """Parse ``free:R``, ``fpc:M1,M2,...`` or ``zd:D``."""
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise ParseError(f"presentation {text!r} lacks ':'", len(kind))

    def parse_int(token: str, position: int) -> int:
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", position) from None

    base = len(kind) + 1
    if kind == "free":
        return Free(parse_int(rest, base))
    if kind == "zd":
        return FreeAbelian(parse_int(rest, base))
    if kind == "fpc":
        orders = []
        pos = base
        for token in rest.split(","):
            orders.append(parse_int(token, pos))
            pos += len(token) + 1
        return FreeProductCyclic(tuple(orders))
    raise ParseError(f"unknown presentation kind {kind!r}", 0)
