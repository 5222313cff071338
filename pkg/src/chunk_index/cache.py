"""On-disk cache for a built chunk index.

The container is JSON: a header (format version, build parameters, alphabets
and the SHA-256 of the source lexicon) followed by the chunk table. A
version, parameter or hash mismatch makes ``load_or_build`` rebuild.
"""

import logging
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

from src.chunk_index.index import DEFAULT_MIN_CHUNK_LEN, ChunkIndex, build_index
from src.core.error_handling import IndexCacheError
from src.lexicon.models import Lexicon

logger = logging.getLogger(__name__)

INDEX_FORMAT_VERSION = 1


class IndexCache(BaseModel):
    """Serialized form of a ChunkIndex."""

    format_version: int = INDEX_FORMAT_VERSION
    lexicon_hash: str = Field(description="SHA-256 of the canonical source lexicon.")
    min_chunk_len: int = Field(ge=1)
    null_symbol: str
    weighted: bool = False
    grapheme_alphabet: list[str]
    phoneme_alphabet: list[str]
    chunks: list[tuple[str, list[str], int]] = Field(
        default_factory=list, description="(graphemic, phonemic tokens, freq) rows."
    )

    @classmethod
    def from_index(cls, index: ChunkIndex, lexicon_hash: str) -> "IndexCache":
        """Snapshot an index."""
        return cls(
            lexicon_hash=lexicon_hash,
            min_chunk_len=index.min_chunk_len,
            null_symbol=index.null_symbol,
            weighted=index.weighted,
            grapheme_alphabet=sorted(index.grapheme_alphabet),
            phoneme_alphabet=sorted(index.phoneme_alphabet),
            chunks=[(c.graphemic, list(c.phonemic), c.freq) for c in index.chunks()],
        )

    def to_index(self) -> ChunkIndex:
        """Rebuild the trie from the chunk table."""
        index = ChunkIndex(
            min_chunk_len=self.min_chunk_len,
            null_symbol=self.null_symbol,
            grapheme_alphabet=frozenset(self.grapheme_alphabet),
            phoneme_alphabet=frozenset(self.phoneme_alphabet),
            weighted=self.weighted,
        )
        for graphemic, phonemic, freq in self.chunks:
            index.add(graphemic, tuple(phonemic), freq)
        return index


def save_index(index: ChunkIndex, path: str | Path, lexicon_hash: str) -> IndexCache:
    """Write ``index`` to ``path`` and return the written container."""
    cache = IndexCache.from_index(index, lexicon_hash)
    Path(path).write_text(cache.model_dump_json(), encoding="utf-8")
    logger.info("Wrote index cache %s (%d chunks)", path, len(cache.chunks))
    return cache


def load_index(path: str | Path) -> IndexCache:
    """Read a cache container.

    Raises:
        IndexCacheError: The file is not a cache of the current format version.
    """
    try:
        cache = IndexCache.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise IndexCacheError(f"{path} is not a valid index cache: {e}") from e
    if cache.format_version != INDEX_FORMAT_VERSION:
        raise IndexCacheError(
            f"{path} has format version {cache.format_version}, expected {INDEX_FORMAT_VERSION}"
        )
    return cache


def load_or_build(
    lexicon: Lexicon,
    path: str | Path | None = None,
    min_chunk_len: int = DEFAULT_MIN_CHUNK_LEN,
    weight_by_word_freq: bool = False,
) -> ChunkIndex:
    """Reuse a matching cache at ``path``, otherwise build the index (and cache it)."""
    if path is None:
        return build_index(lexicon, min_chunk_len, weight_by_word_freq)

    lexicon_hash = lexicon.content_hash()
    if Path(path).exists():
        try:
            cache = load_index(path)
        except IndexCacheError as e:
            logger.warning("Ignoring index cache: %s", e)
        else:
            if (
                cache.lexicon_hash == lexicon_hash
                and cache.min_chunk_len == min_chunk_len
                and cache.weighted == weight_by_word_freq
            ):
                logger.info("Loaded index cache %s", path)
                return cache.to_index()
            logger.warning("Index cache %s is stale; rebuilding", path)

    index = build_index(lexicon, min_chunk_len, weight_by_word_freq)
    save_index(index, path, lexicon_hash)
    return index
