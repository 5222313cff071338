"""Tests for the transcription_app graph and its configuration."""

from fractions import Fraction

import pytest

from src.configuration import Configuration
from src.evaluation.splits import SplitSpec
from src.ranker import RankingPolicy
from src.transcription_graph import transcription_app


@pytest.fixture
def sample_input_state(hope_index) -> dict:
    """Provide a sample input state for the transcription_app graph."""
    return {"word": "hope", "index": hope_index}


@pytest.mark.asyncio
async def test_transcription_graph_ranks_candidates(sample_input_state: dict):
    # --- Act ---
    result = await transcription_app.ainvoke(
        sample_input_state, config={"configurable": {"mode": "smpa", "k": 3}}
    )

    # --- Assert ---
    assert len(result["matches"]) == 8
    assert result["lattice"].word == "hope"
    candidates = result["result"].candidates
    assert ["".join(c.merged) for c in candidates] == ["-@p-", "hOp-", "h@p-"]
    assert candidates[0].score == Fraction(5, 8)
    assert result["operation_counts"]["trie_steps"] > 0
    assert result["operation_counts"]["arc_checks"] > 0
    assert result["operation_counts"]["dp_relaxations"] > 0


@pytest.mark.asyncio
async def test_transcription_graph_silence(hope_index):
    result = await transcription_app.ainvoke({"word": "zzzz", "index": hope_index})

    assert result["result"].silent
    assert result["matches"] == []


@pytest.mark.asyncio
async def test_transcription_graph_uses_configured_mode(sample_input_state: dict):
    result = await transcription_app.ainvoke(
        sample_input_state, config={"configurable": {"mode": "overlap1", "k": 5}}
    )

    assert result["result"].mode == "pronounce"
    assert [c.chunk_count for c in result["result"].candidates] == [2, 2, 3]


def test_configuration_from_runnable_config():
    config = Configuration.from_runnable_config(
        {"configurable": {"mode": "headtail", "k": 2, "seed": 5, "fold_count": 3}}
    )

    assert config.get_ranking_policy() == RankingPolicy(mode="headtail", k=2)
    assert config.get_split_spec() == SplitSpec(fold_count=3, test_fraction=0.1, rng_seed=5)
    assert Configuration.from_runnable_config(None) == Configuration()


def test_configuration_environment_overrides(monkeypatch):
    monkeypatch.setenv("SMPA_MODE", "pronounce")
    monkeypatch.setenv("SMPA_MIN_CHUNK_LEN", "3")

    config = Configuration.from_runnable_config({"configurable": {"mode": "smpa"}})

    assert config.mode == "pronounce"
    assert config.min_chunk_len == 3
