"""Base class for recombination modes.

A recombination mode decides which pairs of overlapping chunk matches may be
chained in the pronunciation lattice, which complete paths count as
pronunciations, and how candidates are ordered. Every mode shares the same
lattice machinery:
- strict overlap (neither containment nor abutment)
- positional phoneme agreement on the shared letters
and adds its own restriction on top.
"""

from abc import ABC, abstractmethod
from fractions import Fraction


class RecombinationMode(ABC):
    """Abstract base class for recombination modes."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Unique identifier for this mode (e.g. 'smpa', 'pronounce')."""
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        """Human-readable name for reports."""
        pass

    @property
    def aliases(self) -> tuple[str, ...]:
        """Alternative names accepted by the registry."""
        return ()

    @property
    def report_label(self) -> str:
        """Label written into evaluation reports."""
        return self.name

    @abstractmethod
    def admits_arc(self, left_start: int, left_end: int, right_start: int, right_end: int, word_len: int) -> bool:
        """Whether two strictly overlapping, agreeing matches may be chained.

        Args:
            left_start: Start of the earlier match.
            left_end: End (exclusive) of the earlier match.
            right_start: Start of the later match.
            right_end: End (exclusive) of the later match.
            word_len: Length of the word being transcribed.
        """
        pass

    def admits_path(self, node_count: int) -> bool:
        """Whether an S-to-E path visiting ``node_count`` chunks is a pronunciation."""
        return node_count >= 1

    @abstractmethod
    def primary_key(self, score: Fraction, chunk_count: int, total_chunk_len: int, word_len: int) -> tuple:
        """Mode-specific sort key, ascending means better.

        The ranker appends the frequency tie-break and the canonical order.
        """
        pass
