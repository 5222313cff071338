"""Chunk extraction and substring index.

Example:
    from src.chunk_index import build_index, match_word

    index = build_index(lexicon, min_chunk_len=2)
    matches = match_word(index, "hope")
"""

from src.chunk_index.cache import (
    INDEX_FORMAT_VERSION,
    IndexCache,
    load_index,
    load_or_build,
    save_index,
)
from src.chunk_index.index import (
    DEFAULT_MIN_CHUNK_LEN,
    Chunk,
    ChunkIndex,
    ChunkMatch,
    build_index,
    chunk_spans,
    extract_chunks,
    match_word,
)

__all__ = [
    "DEFAULT_MIN_CHUNK_LEN",
    "INDEX_FORMAT_VERSION",
    "Chunk",
    "ChunkIndex",
    "ChunkMatch",
    "IndexCache",
    "build_index",
    "chunk_spans",
    "extract_chunks",
    "load_index",
    "load_or_build",
    "match_word",
    "save_index",
]
