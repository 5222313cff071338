"""Pronunciation lattice construction and traversal.

Nodes are the chunk matches found in the unknown word. An arc joins two
matches when they strictly overlap (the later one starts inside the earlier
one and ends after it) and their phonemes agree position by position on the
shared letters; the recombination mode may restrict arcs further. Two extra
vertices S and E connect to every prefix match and from every suffix match,
so each S-to-E path spells a complete pronunciation.
"""

import logging
from bisect import bisect_right
from itertools import islice
from typing import Iterator, NamedTuple, Sequence

import networkx as nx

from src.chunk_index.index import ChunkMatch
from src.core.error_handling import LatticeConsistencyError
from src.lexicon.models import PhonemeSeq
from src.recombination_modes import RecombinationMode, RecombinationModeRegistry
from src.utils import OperationCounter

logger = logging.getLogger(__name__)

START = "S"
END = "E"

LatticePath = list[ChunkMatch]


class LatticeArc(NamedTuple):
    """An arc between two strictly overlapping chunk matches."""

    source: ChunkMatch
    target: ChunkMatch
    overlap: int


class Lattice:
    """An immutable pronunciation lattice for one word.

    Attributes:
        word: The word being transcribed.
        mode: The recombination mode the arcs were built under.
        graph: networkx DiGraph over the matches plus the S and E vertices;
            chunk arcs carry an ``overlap`` attribute.
    """

    def __init__(self, word: str, mode: RecombinationMode, graph: nx.DiGraph, nodes: list[ChunkMatch]):
        self.word = word
        self.mode = mode
        self.graph = graph
        self.nodes = nodes

    @property
    def arcs(self) -> list[LatticeArc]:
        """Chunk-to-chunk arcs in node order (S and E arcs excluded)."""
        return [
            LatticeArc(source, target, data["overlap"])
            for source, target, data in self.graph.edges(data=True)
            if source != START and target != END
        ]

    def successors(self, node) -> list:
        """Successors of a node (or of S) in insertion order."""
        return list(self.graph.successors(node))

    def prefix_nodes(self) -> list[ChunkMatch]:
        return self.successors(START)

    def topological_order(self) -> list[ChunkMatch]:
        """Chunk nodes ordered by (start, end), a valid topological order."""
        return list(self.nodes)

    def has_path(self) -> bool:
        """Whether at least one S-to-E path exists (ignoring path-length rules)."""
        return nx.has_path(self.graph, START, END)


def _resolve_mode(mode: str | RecombinationMode) -> RecombinationMode:
    return RecombinationModeRegistry.get(mode) if isinstance(mode, str) else mode


def _agree(left: ChunkMatch, right: ChunkMatch) -> bool:
    shared = left.end - right.start
    return left.phonemic[right.start - left.start :] == right.phonemic[:shared]


def build_lattice(
    word: str,
    matches: Sequence[ChunkMatch],
    mode: str | RecombinationMode = "smpa",
    counter: OperationCounter | None = None,
) -> Lattice:
    """Build the pronunciation lattice of ``word`` from its chunk matches.

    Args:
        word: The word being transcribed.
        matches: Output of ``match_word`` for the same word.
        mode: Recombination mode name or instance.
        counter: Optional operation counter (``arc_checks``).

    Returns:
        The lattice; one without any S-to-E path is valid and means silence.
    """
    mode = _resolve_mode(mode)
    word_len = len(word)
    nodes = sorted(set(matches), key=lambda m: (m.start, m.end, m.phonemic))
    for node in nodes:
        if not 0 <= node.start < node.end <= word_len:
            raise ValueError(f"match {node} lies outside '{word}'")

    graph = nx.DiGraph()
    graph.add_node(START)
    graph.add_nodes_from(nodes)
    graph.add_node(END)
    starts = [node.start for node in nodes]

    for node in nodes:
        if node.start == 0:
            graph.add_edge(START, node)

    for left in nodes:
        # candidates start strictly inside the left match
        first = bisect_right(starts, left.start)
        last = bisect_right(starts, left.end - 1)
        for right in islice(nodes, first, last):
            if counter is not None:
                counter.tick("arc_checks")
            if right.end <= left.end:
                continue
            if not mode.admits_arc(left.start, left.end, right.start, right.end, word_len):
                continue
            if _agree(left, right):
                graph.add_edge(left, right, overlap=left.end - right.start)
        if left.end == word_len:
            graph.add_edge(left, END)

    logger.debug(
        "Lattice for '%s' (%s): %d nodes, %d edges",
        word,
        mode.name,
        len(nodes),
        graph.number_of_edges(),
    )
    return Lattice(word, mode, graph, nodes)


def iter_paths(lattice: Lattice) -> Iterator[LatticePath]:
    """Yield every admitted S-to-E path in canonical (depth-first, node order) order."""
    for path in nx.all_simple_paths(lattice.graph, START, END):
        chunks = path[1:-1]
        if lattice.mode.admits_path(len(chunks)):
            yield chunks


def enumerate_paths(lattice: Lattice, limit: int = 100) -> list[LatticePath]:
    """Return up to ``limit`` distinct S-to-E paths; an empty list means silence."""
    if limit < 1:
        raise ValueError("limit must be a positive integer")
    return list(islice(iter_paths(lattice), limit))


def merge_path_phonemes(word: str, path: Sequence[ChunkMatch]) -> PhonemeSeq:
    """Merge the phonemes of a path into one aligned sequence for ``word``.

    Raises:
        LatticeConsistencyError: The path leaves a position uncovered or two
            chunks disagree on a shared position.
    """
    merged: list[str | None] = [None] * len(word)
    for node in path:
        for offset, phoneme in enumerate(node.phonemic):
            position = node.start + offset
            if position >= len(word):
                raise LatticeConsistencyError(f"chunk {node} runs past the end of '{word}'")
            current = merged[position]
            if current is not None and current != phoneme:
                raise LatticeConsistencyError(
                    f"chunks disagree at position {position} of '{word}': {current!r} vs {phoneme!r}"
                )
            merged[position] = phoneme
    if any(phoneme is None for phoneme in merged):
        raise LatticeConsistencyError(f"path does not cover every position of '{word}'")
    return tuple(merged)
