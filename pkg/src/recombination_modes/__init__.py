"""Recombination modes.

Three modes share one lattice and ranking pipeline:
- **smpa**: unbounded overlap, ranked by mean chunk length
- **pronounce** (alias **overlap1**): overlap of exactly one, fewest chunks wins
- **headtail**: one prefix chunk plus one suffix chunk, largest overlap wins

To add a mode:
1. Create a new file in this directory implementing RecombinationMode
2. Register it in this __init__.py file

Example:
    from src.recombination_modes import RecombinationModeRegistry

    mode = RecombinationModeRegistry.get("overlap1")
"""

from src.recombination_modes.base import RecombinationMode
from src.recombination_modes.headtail import HeadTailMode
from src.recombination_modes.pronounce import PronounceMode
from src.recombination_modes.registry import RecombinationModeRegistry
from src.recombination_modes.smpa import SmpaMode

RecombinationModeRegistry.register(SmpaMode())
RecombinationModeRegistry.register(PronounceMode())
RecombinationModeRegistry.register(HeadTailMode())

__all__ = [
    "RecombinationMode",
    "RecombinationModeRegistry",
    "SmpaMode",
    "PronounceMode",
    "HeadTailMode",
]
