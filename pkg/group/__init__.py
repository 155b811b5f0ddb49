"""Words, normal forms and symmetric sets for the supported group families."""

from group.word import (
    IDENTITY,
    InvalidGenerator,
    Letter,
    ParseError,
    Word,
    format_word,
    parse_word,
    word_sort_key,
)
from group.presentation import (
    Free,
    FreeAbelian,
    FreeProductCyclic,
    GroupPresentation,
    Key,
    PresentationMismatch,
    parse_presentation,
)
from group.genset import GenSet, NotSymmetric, parse_genset, standard_set, symmetrize
from group.ball import BallGuardExceeded, CayleyBall, cayley_ball

__all__ = [
    "IDENTITY",
    "InvalidGenerator",
    "Letter",
    "ParseError",
    "Word",
    "format_word",
    "parse_word",
    "word_sort_key",
    "Free",
    "FreeAbelian",
    "FreeProductCyclic",
    "GroupPresentation",
    "Key",
    "PresentationMismatch",
    "parse_presentation",
    "GenSet",
    "NotSymmetric",
    "parse_genset",
    "standard_set",
    "symmetrize",
    "BallGuardExceeded",
    "CayleyBall",
    "cayley_ball",
]
