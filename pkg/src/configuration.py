import os
from typing import Any

from langchain_core.runnables import RunnableConfig
from pydantic import BaseModel, Field

from src.chunk_index.index import DEFAULT_MIN_CHUNK_LEN
from src.lexicon.models import DEFAULT_NULL_SYMBOL

ENV_PREFIX = "SMPA_"


class Configuration(BaseModel):
    """Main configuration class for the transcription engine and its evaluation."""

    # Recombination and ranking
    mode: str = Field(
        default="smpa",
        description="Recombination mode: smpa, pronounce (alias overlap1) or headtail.",
    )
    min_chunk_len: int = Field(
        default=DEFAULT_MIN_CHUNK_LEN,
        ge=1,
        description="Shortest chunk kept in the index (whole short words are always kept).",
    )
    k: int = Field(default=1, ge=1, description="Number of candidates returned per word")
    tie_break: str = Field(
        default="freq_sum",
        description="Frequency tie-break between equally ranked candidates: freq_sum, freq_min or none.",
    )
    weight_by_word_freq: bool = Field(
        default=False,
        description="Weight chunk counts by the lexicon's word frequencies instead of counting occurrences.",
    )
    path_limit: int = Field(
        default=100, ge=1, description="Maximum number of lattice paths enumerated for inspection"
    )

    # Lexicon format
    null_symbol: str = Field(
        default=DEFAULT_NULL_SYMBOL, description="Default null phoneme when the file has no header"
    )

    # Evaluation protocol
    seed: int = Field(default=0, description="Seed for the random fold splits")
    fold_count: int = Field(default=10, ge=1, description="Number of (learning, test) pairs")
    test_fraction: float = Field(
        default=0.1, gt=0, lt=1, description="Share of the lexicon held out in each fold"
    )
    max_fold_workers: int | None = Field(
        default=None,
        description="Upper bound on folds evaluated concurrently; None lets the graph runtime decide.",
    )

    log_level: str = Field(default="WARNING", description="Root logging level")

    def get_lexicon_format(self):
        """Build the LexiconFormat used when a file carries no header."""
        from src.lexicon.reader import LexiconFormat

        return LexiconFormat(null_symbol=self.null_symbol)

    def get_ranking_policy(self):
        """Build the RankingPolicy described by this configuration."""
        from src.ranker import RankingPolicy

        return RankingPolicy(mode=self.mode, tie_break=self.tie_break, k=self.k)

    def get_split_spec(self):
        """Build the SplitSpec described by this configuration."""
        from src.evaluation.splits import SplitSpec

        return SplitSpec(
            fold_count=self.fold_count,
            test_fraction=self.test_fraction,
            rng_seed=self.seed,
        )

    @classmethod
    def from_runnable_config(
        cls, config: RunnableConfig | None = None
    ) -> "Configuration":
        """Create a Configuration instance from a RunnableConfig."""
        configurable = config.get("configurable", {}) if config else {}
        field_names = list(cls.model_fields.keys())
        values: dict[str, Any] = {
            field_name: os.environ.get(
                f"{ENV_PREFIX}{field_name.upper()}", configurable.get(field_name)
            )
            for field_name in field_names
        }
        return cls(**{k: v for k, v in values.items() if v is not None})
