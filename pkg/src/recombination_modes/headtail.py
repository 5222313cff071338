"""Head-and-tail recombination.

A pronunciation is one prefix chunk (the head) followed by one suffix chunk
(the tail) that strictly overlap; the larger the overlap, the better.
"""

from src.recombination_modes.base import RecombinationMode


class HeadTailMode(RecombinationMode):
    @property
    def name(self) -> str:
        return "headtail"

    @property
    def display_name(self) -> str:
        return "Head and tail"

    def admits_arc(self, left_start, left_end, right_start, right_end, word_len) -> bool:
        return left_start == 0 and right_end == word_len

    def admits_path(self, node_count: int) -> bool:
        return node_count == 2

    def primary_key(self, score, chunk_count, total_chunk_len: int, word_len: int) -> tuple:
        # overlap of a two-chunk path
        return (-(total_chunk_len - word_len),)
