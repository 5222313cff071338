"""Shared fixtures: the five-word lexicon behind the 'hope' lattice example."""

import pytest

from src.chunk_index import ChunkIndex, build_index
from src.lexicon import Lexicon, parse_lexicon

HOPE_LEXICON_LINES = [
    "hot\th@t",
    "hose\thOz-",
    "slope\tslOp-",
    "slop\tsl@p",
    "shop\tS-@p",
]


@pytest.fixture
def hope_lexicon_text() -> str:
    return "\n".join(HOPE_LEXICON_LINES) + "\n"


@pytest.fixture
def hope_lexicon(hope_lexicon_text: str) -> Lexicon:
    """hot, hose, slope, slop and shop, aligned one phoneme per letter."""
    return parse_lexicon(hope_lexicon_text.splitlines())


@pytest.fixture
def hope_index(hope_lexicon: Lexicon) -> ChunkIndex:
    return build_index(hope_lexicon, min_chunk_len=2)


@pytest.fixture
def hope_lexicon_file(tmp_path, hope_lexicon_text: str):
    path = tmp_path / "hope.tsv"
    path.write_text(hope_lexicon_text, encoding="utf-8")
    return path
