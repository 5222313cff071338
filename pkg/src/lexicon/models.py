"""Data models for aligned pronunciation lexicons.

An entry pairs a written word with a phoneme string of the same length: each
letter position holds exactly one phoneme symbol, possibly the null symbol
for silent letters (``hose`` / ``hOz-``).
"""

from collections import defaultdict
from functools import cached_property
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

DEFAULT_NULL_SYMBOL = "-"

PhonemeSeq = tuple[str, ...]


class AlignedEntry(BaseModel):
    """A lexicon word with its one-to-one aligned pronunciation."""

    model_config = ConfigDict(frozen=True)

    graphemes: str = Field(min_length=1, description="The written word, one letter per position.")
    phonemes: PhonemeSeq = Field(
        description="One phoneme symbol per letter position; the null symbol marks silent letters."
    )
    word_freq: int = Field(
        default=1, ge=0, description="Corpus frequency of the word, 1 when the source has none."
    )

    @model_validator(mode="after")
    def _check_alignment(self) -> "AlignedEntry":
        if len(self.graphemes) != len(self.phonemes):
            raise ValueError(
                f"alignment error: {len(self.graphemes)} letters but "
                f"{len(self.phonemes)} phonemes for '{self.graphemes}'"
            )
        return self


class Lexicon(BaseModel):
    """An immutable, validated collection of aligned entries."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[AlignedEntry, ...]
    grapheme_alphabet: frozenset[str]
    phoneme_alphabet: frozenset[str]
    null_symbol: str = DEFAULT_NULL_SYMBOL
    multichar: bool = Field(
        default=False, description="Phonemes are space-separated tokens rather than characters."
    )
    has_frequency: bool = Field(
        default=False, description="The source carried a frequency column."
    )
    declared_alphabets: bool = Field(
        default=False, description="Alphabets came from header lines rather than the data."
    )
    warnings: tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check_alphabets(self) -> "Lexicon":
        if self.null_symbol not in self.phoneme_alphabet:
            raise ValueError(f"null symbol '{self.null_symbol}' missing from the phoneme alphabet")
        if self.null_symbol in self.grapheme_alphabet:
            raise ValueError(f"null symbol '{self.null_symbol}' cannot be a letter")
        for entry in self.entries:
            unknown_letters = set(entry.graphemes) - self.grapheme_alphabet
            if unknown_letters:
                raise ValueError(
                    f"'{entry.graphemes}' uses letters outside the alphabet: {sorted(unknown_letters)}"
                )
            unknown_phonemes = set(entry.phonemes) - self.phoneme_alphabet
            if unknown_phonemes:
                raise ValueError(
                    f"'{entry.graphemes}' uses phonemes outside the alphabet: {sorted(unknown_phonemes)}"
                )
        return self

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def pronunciation_map(self) -> dict[str, list[PhonemeSeq]]:
        by_word: dict[str, list[PhonemeSeq]] = defaultdict(list)
        for entry in self.entries:
            surface = strip_nulls(entry.phonemes, self.null_symbol)
            if surface not in by_word[entry.graphemes]:
                by_word[entry.graphemes].append(surface)
        return dict(by_word)

    def pronunciations(self, word: str) -> list[PhonemeSeq]:
        """Return every distinct surface pronunciation listed for ``word``."""
        return list(self.pronunciation_map.get(word, []))

    def subset(self, indices: Iterable[int]) -> "Lexicon":
        """Build a sub-lexicon over the given entry positions, sharing alphabets."""
        return Lexicon(
            entries=tuple(self.entries[i] for i in indices),
            grapheme_alphabet=self.grapheme_alphabet,
            phoneme_alphabet=self.phoneme_alphabet,
            null_symbol=self.null_symbol,
            multichar=self.multichar,
            has_frequency=self.has_frequency,
            declared_alphabets=self.declared_alphabets,
        )

    def format_phonemes(self, phonemes: Sequence[str]) -> str:
        """Render a phoneme sequence the way the lexicon file writes it."""
        return " ".join(phonemes) if self.multichar else "".join(phonemes)

    def content_hash(self) -> str:
        """SHA-256 of the canonical serialization, used to validate index caches."""
        import hashlib

        from src.lexicon.reader import serialize_lexicon

        return hashlib.sha256(serialize_lexicon(self).encode("utf-8")).hexdigest()


def strip_nulls(phonemes: Sequence[str], null_symbol: str = DEFAULT_NULL_SYMBOL) -> PhonemeSeq:
    """Remove alignment padding, keeping the surface pronunciation in order.

    Args:
        phonemes: An aligned phoneme sequence (a string works for single-character symbols).
        null_symbol: The empty-phoneme marker.

    Returns:
        The phonemes with every null symbol removed.
    """
    return tuple(p for p in phonemes if p != null_symbol)
