"""Letters and words, and their text syntax.

A word is stored as a tuple of signed generator indices: ``+i`` is the
i-th generator, ``-i`` its inverse, ``()`` the identity.  ``Letter`` is
the decoded view of a single entry.

Text syntax: lowercase letters are generators, uppercase letters their
inverses, ``e`` alone is the identity.  Because ``e`` is reserved, the
alphabet skips it: generator 5 is written ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

Word = Tuple[int, ...]

IDENTITY: Word = ()
IDENTITY_TEXT = "e"
ALPHABET = "abcdfghijklmnopqrstuvwxyz"
MAX_RANK = len(ALPHABET)


class ParseError(ValueError):
    """Malformed text input; ``position`` is the offending character index."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvalidGenerator(ValueError):
    pass


@dataclass(frozen=True)
class Letter:
    """A generator or the inverse of one."""

    generator_index: int
    inverted: bool = False

    def __post_init__(self):
        if not 1 <= self.generator_index <= MAX_RANK:
            raise InvalidGenerator(
                f"generator index {self.generator_index} outside 1..{MAX_RANK}"
            )

    @staticmethod
    def from_signed(x: int) -> "Letter":
        return Letter(abs(x), x < 0)

    def to_signed(self) -> int:
        return -self.generator_index if self.inverted else self.generator_index

    def __str__(self) -> str:
        ch = ALPHABET[self.generator_index - 1]
        return ch.upper() if self.inverted else ch


def letters(word: Word) -> Tuple[Letter, ...]:
    return tuple(Letter.from_signed(x) for x in word)


def from_letters(items: Iterable[Letter]) -> Word:
    return tuple(letter.to_signed() for letter in items)


def parse_word(text: str, offset: int = 0) -> Word:
    """Parse ``"a A b"`` / ``"aAb"`` / ``"e"`` into a (not yet reduced) word.

    *offset* shifts reported error positions when *text* is a slice of a
    longer input.
    """
    stripped = text.strip()
    if stripped == IDENTITY_TEXT:
        return IDENTITY
    if not stripped:
        raise ParseError("empty word", offset)

    out = []
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        idx = ALPHABET.find(ch.lower())
        if idx < 0:
            raise ParseError(f"unexpected character {ch!r} in word", offset + pos)
        out.append(-(idx + 1) if ch.isupper() else idx + 1)
    return tuple(out)


def format_word(word: Word) -> str:
    if not word:
        return IDENTITY_TEXT
    return "".join(str(Letter.from_signed(x)) for x in word)


def word_sort_key(word: Word) -> Tuple[int, Tuple[int, ...]]:
    """Shortlex order with ``a < A < b < B < ...``."""
    return len(word), tuple(2 * (abs(x) - 1) + (x < 0) for x in word)
