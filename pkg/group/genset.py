"""Symmetric sets of group elements (S with S^-1 = S)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from group.presentation import GroupPresentation, Key
from group.word import ParseError, Word, format_word, parse_word, word_sort_key


class NotSymmetric(ValueError):
    pass


@dataclass(frozen=True)
class GenSet:
    """A finite symmetric set of normal-form words.

    Attributes:
        presentation: The ambient group.
        words:        Distinct normal-form words in shortlex order.
    """

    presentation: GroupPresentation
    words: Tuple[Word, ...]

    def __post_init__(self):
        p = self.presentation
        normal = [p.normal_form(w) for w in self.words]
        for w, nf in zip(self.words, normal):
            if tuple(w) != nf:
                raise ValueError(f"word {format_word(w)} is not in normal form")
        if len(set(normal)) != len(normal):
            raise ValueError("set contains duplicate elements")
        present = set(normal)
        for w in sorted(present, key=word_sort_key):
            inv = p.invert(w)
            if inv not in present:
                raise NotSymmetric(f"set not symmetric: missing {format_word(inv)}")
        object.__setattr__(self, "words", tuple(sorted(normal, key=word_sort_key)))

    # ---- queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, word: Word) -> bool:
        return tuple(word) in self.words

    def keys(self) -> Tuple[Key, ...]:
        p = self.presentation
        return tuple(p.to_key(w) for w in self.words)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    @property
    def contains_identity(self) -> bool:
        return () in self.words

    def is_standard(self) -> bool:
        return set(self.words) == set(self.presentation.standard_set_words())

    def union(self, other: "GenSet") -> "GenSet":
        if other.presentation != self.presentation:
            raise ValueError("cannot unite sets from different presentations")
        return GenSet(self.presentation, tuple(set(self.words) | set(other.words)))

    def text(self) -> str:
        return ",".join(format_word(w) for w in self.words)

    def __repr__(self) -> str:
        return f"GenSet({self.presentation.spec_string()}, {{{self.text()}}})"


# ---- factories -----------------------------------------------------------


def symmetrize(p: GroupPresentation, words: Iterable[Word]) -> GenSet:
    """Union of *words* with their inverses, deduplicated."""
    present = {p.normal_form(w) for w in words}
    present |= {p.invert(w) for w in present}
    return GenSet(p, tuple(present))


def standard_set(p: GroupPresentation) -> GenSet:
    return GenSet(p, tuple(p.standard_set_words()))


def parse_genset(p: GroupPresentation, text: str) -> GenSet:
    """Parse ``"a,A,b,B"``; the listed words must already form a symmetric set."""
    words = []
    pos = 0
    for token in text.split(","):
        if not token.strip():
            raise ParseError("empty element in generating set", pos)
        word = parse_word(token, offset=pos)
        p.validate(word)
        words.append(p.normal_form(word))
        pos += len(token) + 1
    if len(set(words)) != len(words):
        raise ValueError("generating set lists an element twice")
    return GenSet(p, tuple(words))
