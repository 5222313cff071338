"""Aligned pronunciation lexicons.

Example:
    from src.lexicon import parse_lexicon, strip_nulls

    with open("lex.tsv", encoding="utf-8") as f:
        lexicon = parse_lexicon(f)
    surface = strip_nulls(lexicon.entries[0].phonemes, lexicon.null_symbol)
"""

from src.lexicon.models import (
    DEFAULT_NULL_SYMBOL,
    AlignedEntry,
    Lexicon,
    PhonemeSeq,
    strip_nulls,
)
from src.lexicon.reader import (
    LexiconFormat,
    parse_lexicon,
    read_lexicon_file,
    serialize_lexicon,
)

__all__ = [
    "DEFAULT_NULL_SYMBOL",
    "AlignedEntry",
    "Lexicon",
    "LexiconFormat",
    "PhonemeSeq",
    "parse_lexicon",
    "read_lexicon_file",
    "serialize_lexicon",
    "strip_nulls",
]
