"""TypedDicts that define the "memory" of the transcription and evaluation graphs."""

import operator
from typing import Annotated, Any, NotRequired, TypedDict

from src.chunk_index.index import ChunkIndex, ChunkMatch
from src.evaluation.report import EvalReport, FoldReport
from src.evaluation.splits import FoldSplit, SplitSpec
from src.lattice.builder import Lattice
from src.lexicon.models import Lexicon
from src.ranker import RankingPolicy, TranscriptionResult

# --- Transcription Graph State ---


class TranscriptionStateInput(TypedDict):
    """The input to transcribe one word against a built index."""

    word: str
    index: ChunkIndex


class TranscriptionState(TranscriptionStateInput, total=False):
    matches: list[ChunkMatch]
    lattice: Lattice
    result: TranscriptionResult
    operation_counts: dict[str, int]


# --- Evaluation Graph State ---


class EvaluationStateInput(TypedDict):
    """The input to run the fold protocol over a lexicon.

    Without a split spec or policy the graph derives them from the configuration.
    """

    lexicon: Lexicon
    split_spec: NotRequired[SplitSpec]
    policy: NotRequired[RankingPolicy]


class EvaluationState(EvaluationStateInput, total=False):
    splits: list[FoldSplit]
    # folds finish in any order; aggregation sorts them by fold index
    fold_reports: Annotated[list[FoldReport], operator.add]
    report: EvalReport


class FoldState(TypedDict):
    """Payload sent to one fold evaluation."""

    lexicon: Lexicon
    split: FoldSplit
    policy: RankingPolicy
    settings: dict[str, Any]
