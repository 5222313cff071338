"""Registry for discovering and accessing recombination modes.

Modes register themselves under their name and aliases so that the CLI,
configuration and evaluation reports can refer to them by string.
"""

import logging
from typing import Dict

from src.core.error_handling import UnknownModeError
from src.recombination_modes.base import RecombinationMode

logger = logging.getLogger(__name__)


class RecombinationModeRegistry:
    """Central registry for all available recombination modes."""

    _modes: Dict[str, RecombinationMode] = {}
    _aliases: Dict[str, str] = {}

    @classmethod
    def register(cls, mode: RecombinationMode) -> None:
        """Register a mode under its name and aliases.

        Raises:
            ValueError: If the name or an alias is already taken.
        """
        for key in (mode.name, *mode.aliases):
            if key in cls._modes or key in cls._aliases:
                raise ValueError(f"Recombination mode '{key}' is already registered")
        cls._modes[mode.name] = mode
        for alias in mode.aliases:
            cls._aliases[alias] = mode.name
        logger.debug("Registered recombination mode: %s", mode.name)

    @classmethod
    def get(cls, name: str) -> RecombinationMode:
        """Retrieve a mode by name or alias.

        Raises:
            UnknownModeError: If no mode answers to this name.
        """
        key = name.lower()
        key = cls._aliases.get(key, key)
        if key not in cls._modes:
            available = ", ".join(cls.list_available())
            raise UnknownModeError(
                f"Unknown recombination mode: '{name}'. Available modes: {available}"
            )
        return cls._modes[key]

    @classmethod
    def list_available(cls) -> list[str]:
        """List registered mode names followed by their aliases."""
        return list(cls._modes.keys()) + list(cls._aliases.keys())

    @classmethod
    def clear(cls) -> None:
        """Clear all registered modes.

        Primarily used for testing.
        """
        cls._modes.clear()
        cls._aliases.clear()
