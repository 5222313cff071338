"""Phoneme-level scoring against reference pronunciations."""

from typing import NamedTuple, Sequence

import Levenshtein


class PhonemeAlignment(NamedTuple):
    """Counts from a minimum-cost alignment of a hypothesis against a reference."""

    correct: int
    substitutions: int
    insertions: int
    deletions: int

    @property
    def cost(self) -> int:
        return self.substitutions + self.insertions + self.deletions


def align_phonemes(hypothesis: Sequence[str], reference: Sequence[str]) -> PhonemeAlignment:
    """Align surface phonemes with unit edit costs.

    Both sequences must already be null-stripped. ``correct`` counts reference
    phonemes matched unchanged: len(reference) - substitutions - deletions.
    """
    substitutions = insertions = deletions = 0
    # edit operations turning the hypothesis into the reference: an insert
    # restores a reference phoneme the hypothesis lacks, a delete drops an extra one
    for operation, _, _ in Levenshtein.editops(list(hypothesis), list(reference)):
        if operation == "replace":
            substitutions += 1
        elif operation == "insert":
            deletions += 1
        else:
            insertions += 1
    correct = len(reference) - substitutions - deletions
    return PhonemeAlignment(correct, substitutions, insertions, deletions)


def closest_reference(
    hypothesis: Sequence[str], references: Sequence[Sequence[str]]
) -> tuple[Sequence[str], PhonemeAlignment]:
    """Pick the reference with the lowest edit cost (first one on ties)."""
    best_reference = references[0]
    best = align_phonemes(hypothesis, best_reference)
    for reference in references[1:]:
        alignment = align_phonemes(hypothesis, reference)
        if alignment.cost < best.cost:
            best_reference, best = reference, alignment
    return best_reference, best
