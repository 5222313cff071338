"""Chunk extraction and the substring index over a lexicon.

A chunk pairs a contiguous letter substring of a lexicon entry with the
phonemes aligned to it. The index is a letter trie: walking it from each
start position of an unknown word yields every indexed substring starting
there, so all matches of a word cost O(l(x)^2) trie steps and a single
lookup costs one step per letter.
"""

import logging
from typing import Iterator, NamedTuple

from pydantic import BaseModel, ConfigDict, Field

from src.core.error_handling import EmptyLexiconError
from src.lexicon.models import AlignedEntry, Lexicon, PhonemeSeq
from src.utils import OperationCounter

logger = logging.getLogger(__name__)

DEFAULT_MIN_CHUNK_LEN = 2


class Chunk(BaseModel):
    """A graphemic substring paired with its aligned phonemic substring."""

    model_config = ConfigDict(frozen=True)

    graphemic: str = Field(min_length=1)
    phonemic: PhonemeSeq
    freq: int = Field(default=1, ge=1, description="Occurrences across the lexicon.")


class ChunkMatch(NamedTuple):
    """A chunk realisation found at ``word[start:end]``."""

    start: int
    end: int
    phonemic: PhonemeSeq
    freq: int

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end

    @property
    def length(self) -> int:
        return self.end - self.start


class _TrieNode:
    __slots__ = ("children", "realizations")

    def __init__(self) -> None:
        self.children: dict[str, _TrieNode] = {}
        self.realizations: dict[PhonemeSeq, int] | None = None


def chunk_spans(length: int, min_chunk_len: int) -> Iterator[tuple[int, int]]:
    """Yield every ``[start, end)`` span of a word that forms a chunk.

    A word shorter than ``min_chunk_len`` yields only its whole span.
    """
    if length < min_chunk_len:
        if length >= 1:
            yield 0, length
        return
    for start in range(length - min_chunk_len + 1):
        for end in range(start + min_chunk_len, length + 1):
            yield start, end


def extract_chunks(entry: AlignedEntry, min_chunk_len: int = DEFAULT_MIN_CHUNK_LEN) -> list[Chunk]:
    """List every aligned substring pair of ``entry``, one per occurrence."""
    return [
        Chunk(graphemic=entry.graphemes[start:end], phonemic=entry.phonemes[start:end])
        for start, end in chunk_spans(len(entry.graphemes), min_chunk_len)
    ]


class ChunkIndex:
    """Maps graphemic substrings to their phonemic realisations and counts.

    Immutable once built; concurrent readers are safe.
    """

    def __init__(
        self,
        min_chunk_len: int = DEFAULT_MIN_CHUNK_LEN,
        null_symbol: str = "-",
        grapheme_alphabet: frozenset[str] = frozenset(),
        phoneme_alphabet: frozenset[str] = frozenset(),
        weighted: bool = False,
    ):
        if min_chunk_len < 1:
            raise ValueError("min_chunk_len must be a positive integer")
        self.min_chunk_len = min_chunk_len
        self.null_symbol = null_symbol
        self.grapheme_alphabet = grapheme_alphabet
        self.phoneme_alphabet = phoneme_alphabet
        self.weighted = weighted
        self._root = _TrieNode()
        self._chunk_count = 0

    def add(self, graphemic: str, phonemic: PhonemeSeq, count: int = 1) -> None:
        """Record ``count`` occurrences of one aligned pair."""
        node = self._root
        for letter in graphemic:
            node = node.children.setdefault(letter, _TrieNode())
        if node.realizations is None:
            node.realizations = {}
        if phonemic not in node.realizations:
            self._chunk_count += 1
        node.realizations[phonemic] = node.realizations.get(phonemic, 0) + count

    def add_entry(self, entry: AlignedEntry, count: int = 1) -> None:
        """Index every chunk of ``entry`` with ``count`` occurrences each."""
        graphemes, phonemes = entry.graphemes, entry.phonemes
        length = len(graphemes)
        if length < self.min_chunk_len:
            self.add(graphemes, phonemes, count)
            return
        for start in range(length - self.min_chunk_len + 1):
            node = self._root
            for end in range(start, length):
                node = node.children.setdefault(graphemes[end], _TrieNode())
                if end + 1 - start < self.min_chunk_len:
                    continue
                if node.realizations is None:
                    node.realizations = {}
                phonemic = phonemes[start : end + 1]
                if phonemic not in node.realizations:
                    self._chunk_count += 1
                node.realizations[phonemic] = node.realizations.get(phonemic, 0) + count

    def lookup(
        self, graphemic: str, counter: OperationCounter | None = None
    ) -> dict[PhonemeSeq, int]:
        """Return the realisations of an exact substring, or an empty dict."""
        node = self._root
        for letter in graphemic:
            if counter is not None:
                counter.tick("trie_steps")
            node = node.children.get(letter)
            if node is None:
                return {}
        return dict(node.realizations or {})

    def match_word(self, word: str, counter: OperationCounter | None = None) -> list[ChunkMatch]:
        """Find every indexed chunk occurring in ``word``.

        Spans shorter than ``min_chunk_len`` (indexed only for short lexicon
        words) are reported only when they cover the whole query word.

        Returns:
            Matches ordered by (start, end, phonemic); empty when nothing matches.
        """
        matches: list[ChunkMatch] = []
        length = len(word)
        for start in range(length):
            node = self._root
            for end in range(start, length):
                if counter is not None:
                    counter.tick("trie_steps")
                node = node.children.get(word[end])
                if node is None:
                    break
                if not node.realizations:
                    continue
                span_len = end + 1 - start
                if span_len < self.min_chunk_len and span_len != length:
                    continue
                for phonemic in sorted(node.realizations):
                    matches.append(
                        ChunkMatch(start, end + 1, phonemic, node.realizations[phonemic])
                    )
        return matches

    def chunks(self) -> Iterator[Chunk]:
        """Yield every indexed chunk in graphemic then phonemic order."""
        stack: list[tuple[str, _TrieNode]] = [("", self._root)]
        collected: list[Chunk] = []
        while stack:
            prefix, node = stack.pop()
            if node.realizations:
                for phonemic, freq in node.realizations.items():
                    collected.append(Chunk(graphemic=prefix, phonemic=phonemic, freq=freq))
            for letter, child in node.children.items():
                stack.append((prefix + letter, child))
        collected.sort(key=lambda c: (c.graphemic, c.phonemic))
        yield from collected

    def chunk_count(self) -> int:
        """Number of distinct (graphemic, phonemic) pairs."""
        return self._chunk_count

    def occurrence_count(self) -> int:
        """Total occurrences over all pairs (the sum of every frequency)."""
        return sum(chunk.freq for chunk in self.chunks())


def build_index(
    lexicon: Lexicon,
    min_chunk_len: int = DEFAULT_MIN_CHUNK_LEN,
    weight_by_word_freq: bool = False,
) -> ChunkIndex:
    """Index every chunk of every lexicon entry.

    Args:
        lexicon: The validated source lexicon.
        min_chunk_len: Shortest chunk kept (whole short words are always kept).
        weight_by_word_freq: Count each occurrence ``word_freq`` times (at least once)
            instead of once.

    Raises:
        EmptyLexiconError: The lexicon has no entries.
    """
    if len(lexicon) == 0:
        raise EmptyLexiconError("cannot index an empty lexicon")
    index = ChunkIndex(
        min_chunk_len=min_chunk_len,
        null_symbol=lexicon.null_symbol,
        grapheme_alphabet=lexicon.grapheme_alphabet,
        phoneme_alphabet=lexicon.phoneme_alphabet,
        weighted=weight_by_word_freq,
    )
    for entry in lexicon.entries:
        count = max(entry.word_freq, 1) if weight_by_word_freq else 1
        index.add_entry(entry, count)
    logger.info(
        "Indexed %d entries into %d distinct chunks (min length %d)",
        len(lexicon),
        index.chunk_count(),
        min_chunk_len,
    )
    return index


def match_word(
    index: ChunkIndex, word: str, counter: OperationCounter | None = None
) -> list[ChunkMatch]:
    """Collect every chunk of ``index`` matching a substring of ``word``."""
    return index.match_word(word, counter=counter)
