import logging
import sys
from collections import Counter

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str | int = "WARNING") -> None:
    """Install a single stderr handler on the root logger."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(level.upper() if isinstance(level, str) else level)


class OperationCounter(Counter):
    """Named step counts, used to assert complexity contracts without timing.

    Example:
        counter = OperationCounter()
        index.match_word("hope", counter=counter)
        counter["trie_steps"]
    """

    def tick(self, name: str, amount: int = 1) -> None:
        """Add ``amount`` to the named count."""
        self[name] += amount
