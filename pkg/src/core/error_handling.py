import logging
from functools import wraps
from typing import Any, Dict

logger = logging.getLogger(__name__)


class TranscriptionError(Exception):
    """Base class for data errors raised by the transcription pipeline."""


class LexiconFormatError(TranscriptionError):
    def __init__(self, message: str, line_number: int | None = None):
        self.message = message
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")


class EmptyLexiconError(TranscriptionError):
    pass


class IndexCacheError(TranscriptionError):
    pass


class LatticeConsistencyError(TranscriptionError):
    """Raised when a lattice path disagrees with itself on a shared position."""


class SplitError(TranscriptionError):
    pass


class UnknownModeError(TranscriptionError, ValueError):
    pass


class GraphError(Exception):
    def __init__(self, message: str, node: str, state: dict):
        self.message = message
        self.node = node
        self.state = state
        super().__init__(f"Error in {node}: {message}")


def with_error_handling(func):
    """Log node failures; domain errors pass through, anything else becomes a GraphError."""

    @wraps(func)
    def wrapper(state: Dict[str, Any], *args, **kwargs):
        try:
            return func(state, *args, **kwargs)
        except TranscriptionError:
            logger.exception("Node %s failed", func.__name__)
            raise
        except Exception as e:
            logger.exception("Unexpected failure in node %s", func.__name__)
            raise GraphError(str(e), node=func.__name__, state=dict(state)) from e

    return wrapper
