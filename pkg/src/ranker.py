"""Scoring and selection of candidate pronunciations.

A path P through the lattice of a word x visiting chunks s scores

    C(P) = sum(l(s)) / (|P| * l(x))

i.e. the mean chunk length relative to the word length. Because C is a
ratio, the best path is not a plain additive shortest path: the ranker runs
a layered dynamic program over the DAG where layer k holds paths of exactly
k chunks. Within one layer the score only grows with the total chunk length,
so every (node, layer) state keeps its best partial paths and the layers are
compared at the end with exact rationals.
"""

import logging
from enum import StrEnum
from fractions import Fraction
from typing import Annotated, Iterable, Sequence

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    WithJsonSchema,
    computed_field,
    field_validator,
)

from src.chunk_index.index import ChunkIndex, ChunkMatch
from src.lattice.builder import END, Lattice, build_lattice, merge_path_phonemes
from src.lexicon.models import PhonemeSeq, strip_nulls
from src.recombination_modes import RecombinationMode, RecombinationModeRegistry
from src.utils import OperationCounter

logger = logging.getLogger(__name__)

TRANSCRIPTION_SCHEMA_VERSION = 1


def _to_fraction(value):
    if isinstance(value, (str, int)):
        return Fraction(value)
    return value


Score = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(str, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string", "description": "Exact rational, e.g. '5/8'."}),
]


class TieBreak(StrEnum):
    FREQ_SUM = "freq_sum"
    FREQ_MIN = "freq_min"
    NONE = "none"


class RankingPolicy(BaseModel):
    """How candidates are selected from a lattice."""

    mode: str = Field(default="smpa", description="Recombination mode name or alias.")
    tie_break: TieBreak = Field(
        default=TieBreak.FREQ_SUM,
        description="Aggregate of chunk frequencies used to break score ties.",
    )
    k: int = Field(default=1, ge=1, description="Number of candidates to return.")

    @field_validator("mode")
    @classmethod
    def _canonical_mode(cls, value: str) -> str:
        return RecombinationModeRegistry.get(value).name

    @property
    def recombination_mode(self) -> RecombinationMode:
        return RecombinationModeRegistry.get(self.mode)


class CandidateChunk(BaseModel):
    """One chunk of a candidate's decomposition."""

    model_config = ConfigDict(frozen=True)

    start: int
    end: int
    graphemic: str
    phonemic: PhonemeSeq
    freq: int


class Candidate(BaseModel):
    """A complete pronunciation and the path that produced it."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    path: tuple[CandidateChunk, ...]
    merged: PhonemeSeq = Field(description="Aligned phonemes, one per letter.")
    surface: PhonemeSeq = Field(description="Merged phonemes with nulls removed.")
    score: Score
    chunk_count: int
    total_chunk_len: int
    freq_key: int

    @computed_field
    @property
    def score_decimal(self) -> float:
        return float(self.score)

    @property
    def overlap_total(self) -> int:
        """Sum of the arc overlaps along the path."""
        return self.total_chunk_len - len(self.merged)


class TranscriptionResult(BaseModel):
    """Ranked candidates for one word; an empty list is silence."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    schema_version: int = TRANSCRIPTION_SCHEMA_VERSION
    word: str
    mode: str
    candidates: list[Candidate] = Field(default_factory=list)

    @computed_field
    @property
    def silent(self) -> bool:
        return not self.candidates

    @property
    def best(self) -> Candidate | None:
        return self.candidates[0] if self.candidates else None


def score_path(path: Sequence[ChunkMatch], word_len: int) -> Fraction:
    """Exact score sum(l(s)) / (|P| * l(x)) of a non-empty path."""
    if not path:
        raise ValueError("cannot score an empty path")
    total = sum(node.end - node.start for node in path)
    return Fraction(total, len(path) * word_len)


def _combine(tie_break: TieBreak, current: int | None, freq: int) -> int:
    if tie_break is TieBreak.NONE:
        return 0
    if current is None:
        return freq
    if tie_break is TieBreak.FREQ_MIN:
        return min(current, freq)
    return current + freq


def _freq_key(tie_break: TieBreak, path: Iterable[ChunkMatch]) -> int:
    key = None
    for node in path:
        key = _combine(tie_break, key, node.freq)
    return key or 0


# (total chunk length, frequency key, merged prefix, path)
_Partial = tuple[int, int, PhonemeSeq, tuple[ChunkMatch, ...]]


def _path_spans(path: Iterable[ChunkMatch]) -> tuple[tuple[int, int], ...]:
    return tuple(node.span for node in path)


def _partial_order(partial: _Partial) -> tuple:
    total, freq, prefix, path = partial
    return (-total, -freq, prefix, _path_spans(path))


def _prune(partials: list[_Partial], keep: int, tie_break: TieBreak) -> list[_Partial]:
    """Best partials per merged prefix, top ``keep`` prefixes without splitting a tie class.

    With a minimum-frequency tie-break an extension can erase a frequency
    difference, so only the total length separates tie classes there, and a
    prefix keeps every partial whose path sorts before those of its
    higher-frequency rivals.
    """
    minimum = tie_break is TieBreak.FREQ_MIN
    tie_width = 1 if minimum else 2
    partials.sort(key=_partial_order)
    by_prefix: dict[PhonemeSeq, list[_Partial]] = {}
    kept: list[_Partial] = []
    for partial in partials:
        rivals = by_prefix.get(partial[2])
        if rivals is not None:
            # sorted order: every rival is at least as long and as frequent
            if not minimum or any(
                rival[0] > partial[0] or _path_spans(rival[3]) <= _path_spans(partial[3])
                for rival in rivals
            ):
                continue
        elif len(by_prefix) >= keep and partial[:tie_width] != kept[-1][:tie_width]:
            break
        by_prefix.setdefault(partial[2], []).append(partial)
        kept.append(partial)
    return kept


def _layered_partials(
    lattice: Lattice,
    keep: int,
    tie_break: TieBreak,
    counter: OperationCounter | None = None,
) -> dict[tuple[ChunkMatch, int], list[_Partial]]:
    states: dict[tuple[ChunkMatch, int], list[_Partial]] = {}
    for node in lattice.prefix_nodes():
        states[(node, 1)] = [
            (node.end - node.start, _combine(tie_break, None, node.freq), node.phonemic, (node,))
        ]

    by_node: dict[ChunkMatch, list[int]] = {}
    for node, layer in states:
        by_node.setdefault(node, []).append(layer)

    for node in lattice.topological_order():
        for layer in sorted(by_node.get(node, [])):
            partials = _prune(states[(node, layer)], keep, tie_break)
            states[(node, layer)] = partials
            for successor in lattice.successors(node):
                if successor == END:
                    continue
                overlap = node.end - successor.start
                target = (successor, layer + 1)
                bucket = states.get(target)
                if bucket is None:
                    bucket = states[target] = []
                    by_node.setdefault(successor, []).append(layer + 1)
                for total, freq, prefix, path in partials:
                    if counter is not None:
                        counter.tick("dp_relaxations")
                    bucket.append(
                        (
                            total + successor.end - successor.start,
                            _combine(tie_break, freq, successor.freq),
                            prefix + successor.phonemic[overlap:],
                            path + (successor,),
                        )
                    )
    return states


def _make_candidate(word: str, path: Sequence[ChunkMatch], merged: PhonemeSeq, freq_key: int, null_symbol: str) -> Candidate:
    total = sum(node.end - node.start for node in path)
    return Candidate(
        path=tuple(
            CandidateChunk(
                start=node.start,
                end=node.end,
                graphemic=word[node.start : node.end],
                phonemic=node.phonemic,
                freq=node.freq,
            )
            for node in path
        ),
        merged=merged,
        surface=strip_nulls(merged, null_symbol),
        score=Fraction(total, len(path) * len(word)),
        chunk_count=len(path),
        total_chunk_len=total,
        freq_key=freq_key,
    )


def _candidate_order(mode: RecombinationMode, word_len: int):
    def key(candidate: Candidate) -> tuple:
        return mode.primary_key(
            candidate.score, candidate.chunk_count, candidate.total_chunk_len, word_len
        ) + (
            -candidate.freq_key,
            candidate.surface,
            candidate.merged,
            candidate.chunk_count,
            tuple((chunk.start, chunk.end) for chunk in candidate.path),
        )

    return key


def _select(candidates: Iterable[Candidate], mode: RecombinationMode, word_len: int, k: int | None) -> list[Candidate]:
    order = _candidate_order(mode, word_len)
    best_by_merged: dict[PhonemeSeq, Candidate] = {}
    for candidate in candidates:
        current = best_by_merged.get(candidate.merged)
        if current is None or order(candidate) < order(current):
            best_by_merged[candidate.merged] = candidate
    ranked = sorted(best_by_merged.values(), key=order)
    return ranked if k is None else ranked[:k]


def best_candidates(
    lattice: Lattice,
    policy: RankingPolicy,
    null_symbol: str = "-",
    counter: OperationCounter | None = None,
) -> list[Candidate]:
    """Rank the distinct pronunciations of a lattice.

    Each pronunciation (merged phoneme string) is represented by its best
    path. Ordering: the mode's primary criterion (smpa: highest score,
    pronounce: fewest chunks, headtail: largest overlap), then the frequency
    tie-break, then the surface string. Among paths giving the same
    pronunciation the one with fewer chunks and then the earlier spans is shown.

    Returns:
        Up to ``policy.k`` candidates; an empty list means silence.
    """
    mode = lattice.mode
    word = lattice.word
    states = _layered_partials(lattice, policy.k, policy.tie_break, counter)

    complete: list[Candidate] = []
    for (node, layer), partials in states.items():
        if node.end != len(word) or not mode.admits_path(layer):
            continue
        for _total, freq, prefix, path in _prune(partials, policy.k, policy.tie_break):
            complete.append(_make_candidate(word, path, prefix, freq, null_symbol))
    return _select(complete, mode, len(word), policy.k)


def best_score(lattice: Lattice, counter: OperationCounter | None = None) -> Fraction | None:
    """Optimal score over admitted paths, by the layered maximum-length DP.

    For every node and chunk count k the DP keeps only the maximum total
    chunk length S_k; the optimum is max_k S_k / (k * l(x)).
    """
    best: dict[tuple[ChunkMatch, int], int] = {
        (node, 1): node.end - node.start for node in lattice.prefix_nodes()
    }
    layers: dict[ChunkMatch, set[int]] = {}
    for node, layer in best:
        layers.setdefault(node, set()).add(layer)
    for node in lattice.topological_order():
        for layer in sorted(layers.get(node, ())):
            total = best[(node, layer)]
            for successor in lattice.successors(node):
                if successor == END:
                    continue
                if counter is not None:
                    counter.tick("dp_relaxations")
                target = (successor, layer + 1)
                candidate = total + successor.end - successor.start
                if candidate > best.get(target, -1):
                    best[target] = candidate
                    layers.setdefault(successor, set()).add(layer + 1)

    word_len = len(lattice.word)
    scores = [
        Fraction(total, layer * word_len)
        for (node, layer), total in best.items()
        if node.end == word_len and lattice.mode.admits_path(layer)
    ]
    return max(scores) if scores else None


def rank_paths(
    lattice: Lattice,
    paths: Iterable[Sequence[ChunkMatch]],
    policy: RankingPolicy,
    null_symbol: str = "-",
) -> list[Candidate]:
    """Rank an explicit list of paths with the same ordering as ``best_candidates``."""
    word = lattice.word
    candidates = [
        _make_candidate(
            word,
            path,
            merge_path_phonemes(word, path),
            _freq_key(policy.tie_break, path),
            null_symbol,
        )
        for path in paths
    ]
    return _select(candidates, lattice.mode, len(word), policy.k)


def transcribe_word(
    word: str,
    index: ChunkIndex,
    policy: RankingPolicy | None = None,
    counter: OperationCounter | None = None,
) -> TranscriptionResult:
    """Collect matches, build the lattice and rank its pronunciations."""
    policy = policy or RankingPolicy()
    matches = index.match_word(word, counter=counter)
    lattice = build_lattice(word, matches, policy.recombination_mode, counter=counter)
    candidates = best_candidates(lattice, policy, index.null_symbol, counter=counter)
    if not candidates:
        logger.debug("No pronunciation for '%s' (%s)", word, policy.mode)
    return TranscriptionResult(word=word, mode=policy.mode, candidates=candidates)


def transcribe(
    word: str,
    index: ChunkIndex,
    policy: RankingPolicy | None = None,
    counter: OperationCounter | None = None,
) -> Candidate | None:
    """Return the best pronunciation of ``word``, or None for silence.

    Use ``transcribe_word`` for the full ranked list.
    """
    return transcribe_word(word, index, policy, counter).best
