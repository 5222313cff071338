"""Random disjoint (learning set, test set) pairs over a lexicon."""

import hashlib
import random

from pydantic import BaseModel, ConfigDict, Field

from src.core.error_handling import SplitError
from src.lexicon.models import Lexicon


class SplitSpec(BaseModel):
    """Parameters of the fold protocol."""

    fold_count: int = Field(default=10, ge=1, description="Number of (learning, test) pairs.")
    test_fraction: float = Field(
        default=0.1, gt=0, lt=1, description="Share of the entries held out per fold."
    )
    rng_seed: int = Field(default=0, description="Seed every fold's shuffle is derived from.")


class FoldSplit(BaseModel):
    """Entry positions of one fold; train and test are disjoint and cover the lexicon."""

    model_config = ConfigDict(frozen=True)

    fold: int
    train: tuple[int, ...]
    test: tuple[int, ...]


def fold_seed(rng_seed: int, fold: int) -> int:
    """Derive a fold's seed so that folds differ but stay reproducible."""
    digest = hashlib.sha256(f"{rng_seed}:{fold}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def test_size_for(entry_count: int, test_fraction: float) -> int:
    """Number of held-out entries, round(test_fraction * N)."""
    return round(test_fraction * entry_count)


def generate_splits(lexicon: Lexicon, spec: SplitSpec) -> list[FoldSplit]:
    """Draw ``spec.fold_count`` independent random splits of the lexicon entries.

    Raises:
        SplitError: The lexicon is empty or too small for the test fraction
            (no test entry, or no learning entry left).
    """
    entry_count = len(lexicon)
    if entry_count == 0:
        raise SplitError("cannot split an empty lexicon")
    test_size = test_size_for(entry_count, spec.test_fraction)
    if test_size < 1 or test_size >= entry_count:
        raise SplitError(
            f"{entry_count} entries are too few for a test fraction of {spec.test_fraction}"
        )

    splits = []
    for fold in range(spec.fold_count):
        rng = random.Random(fold_seed(spec.rng_seed, fold))
        test = sorted(rng.sample(range(entry_count), test_size))
        held_out = set(test)
        train = [i for i in range(entry_count) if i not in held_out]
        splits.append(FoldSplit(fold=fold, train=tuple(train), test=tuple(test)))
    return splits
