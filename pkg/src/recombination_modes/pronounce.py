"""Overlap-of-one recombination (the PRONOUNCE rule).

Two adjacent chunks must share exactly one letter position, hence exactly
one phoneme; the fewer chunks a pronunciation uses, the better.
"""

from src.recombination_modes.base import RecombinationMode


class PronounceMode(RecombinationMode):
    @property
    def name(self) -> str:
        return "pronounce"

    @property
    def display_name(self) -> str:
        return "PRONOUNCE (overlap of one)"

    @property
    def aliases(self) -> tuple[str, ...]:
        return ("overlap1",)

    @property
    def report_label(self) -> str:
        return "overlap1"

    def admits_arc(self, left_start, left_end, right_start, right_end, word_len) -> bool:
        return left_end - right_start == 1

    def primary_key(self, score, chunk_count: int, total_chunk_len, word_len) -> tuple:
        return (chunk_count,)
