"""Unbounded-overlap recombination.

Any number of chunks may be chained as long as consecutive ones strictly
overlap; candidates are ranked by the mean chunk length relative to the word
length, sum(l(s)) / (|P| * l(x)), which rewards long chunks and large
overlaps.
"""

from fractions import Fraction

from src.recombination_modes.base import RecombinationMode


class SmpaMode(RecombinationMode):
    @property
    def name(self) -> str:
        return "smpa"

    @property
    def display_name(self) -> str:
        return "SMPA (unbounded overlap)"

    def admits_arc(self, left_start, left_end, right_start, right_end, word_len) -> bool:
        return True

    def primary_key(self, score: Fraction, chunk_count, total_chunk_len, word_len) -> tuple:
        return (-score,)
