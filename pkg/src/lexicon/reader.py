"""Reading and writing the tab-separated aligned lexicon format.

One entry per line, ``word<TAB>aligned_phonemes[<TAB>frequency]``. Lines
starting with ``#`` are comments, except for the headers recognised before
the first entry:

- ``#null=<symbol>``: the null phoneme (default ``-``)
- ``#multichar=true``: phonemes are space-separated tokens
- ``#graphemes=<symbols>`` / ``#phonemes=<symbols>``: declared alphabets
"""

import logging
from typing import Iterable, TextIO

from pydantic import BaseModel, Field, ValidationError

from src.core.error_handling import EmptyLexiconError, LexiconFormatError
from src.lexicon.models import DEFAULT_NULL_SYMBOL, AlignedEntry, Lexicon

logger = logging.getLogger(__name__)

_HEADER_KEYS = ("null", "multichar", "graphemes", "phonemes")


class LexiconFormat(BaseModel):
    """Descriptor of a lexicon file; headers in the file override these values."""

    null_symbol: str = Field(default=DEFAULT_NULL_SYMBOL, min_length=1)
    multichar: bool = False
    grapheme_alphabet: frozenset[str] | None = None
    phoneme_alphabet: frozenset[str] | None = None


def _parse_header(line: str) -> tuple[str, str] | None:
    body = line[1:].strip()
    key, sep, value = body.partition("=")
    key = key.strip().lower()
    if not sep or key not in _HEADER_KEYS:
        return None
    return key, value.strip()


def _split_symbols(text: str, multichar: bool) -> tuple[str, ...]:
    return tuple(text.split()) if multichar else tuple(text)


def _parse_entry(line: str, line_number: int, fmt: LexiconFormat) -> tuple[AlignedEntry, bool]:
    fields = line.split("\t")
    if len(fields) not in (2, 3):
        raise LexiconFormatError(
            f"expected 2 or 3 tab-separated fields, found {len(fields)}", line_number
        )
    word = fields[0].strip()
    phonemes = _split_symbols(fields[1].strip(), fmt.multichar)
    word_freq = 1
    has_frequency = len(fields) == 3
    if has_frequency:
        try:
            word_freq = int(fields[2])
        except ValueError:
            raise LexiconFormatError(f"frequency '{fields[2]}' is not an integer", line_number)
    if fmt.null_symbol in word:
        raise LexiconFormatError(
            f"letter position holds the null symbol '{fmt.null_symbol}' in '{word}'", line_number
        )
    try:
        entry = AlignedEntry(graphemes=word, phonemes=phonemes, word_freq=word_freq)
    except ValidationError as e:
        message = "; ".join(err["msg"].removeprefix("Value error, ") for err in e.errors())
        raise LexiconFormatError(message, line_number) from e
    if fmt.grapheme_alphabet is not None and not set(word) <= fmt.grapheme_alphabet:
        raise LexiconFormatError(f"'{word}' uses undeclared letters", line_number)
    if fmt.phoneme_alphabet is not None and not set(phonemes) <= fmt.phoneme_alphabet:
        raise LexiconFormatError(f"'{word}' uses undeclared phonemes", line_number)
    return entry, has_frequency


def parse_lexicon(
    source: TextIO | Iterable[str],
    fmt: LexiconFormat | None = None,
    strict: bool = True,
) -> Lexicon:
    """Parse and validate an aligned lexicon.

    Args:
        source: A text stream or any iterable of lines.
        fmt: Format descriptor; header lines in the source take precedence.
        strict: When True a malformed line raises; otherwise it is logged and skipped.

    Returns:
        A validated Lexicon. Alphabets are inferred from the data unless declared.

    Raises:
        LexiconFormatError: A line is malformed (carries the 1-based line number).
        EmptyLexiconError: The source holds no entry.
    """
    fmt = fmt.model_copy() if fmt else LexiconFormat()
    entries: list[AlignedEntry] = []
    warnings: list[str] = []
    first_line_of: dict[str, tuple[int, tuple[str, ...]]] = {}
    has_frequency = False
    declared_phonemes: str | None = None

    for line_number, raw_line in enumerate(source, start=1):
        line = raw_line.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            header = _parse_header(line) if not entries else None
            if header is None:
                continue
            key, value = header
            if key == "null":
                if not value:
                    raise LexiconFormatError("the null symbol header is empty", line_number)
                fmt.null_symbol = value
            elif key == "multichar":
                fmt.multichar = value.lower() in ("1", "true", "yes")
            elif key == "graphemes":
                fmt.grapheme_alphabet = frozenset(value.split() if " " in value else value)
            else:
                declared_phonemes = value
            continue

        if declared_phonemes is not None:
            # headers end at the first entry; only then is multichar settled
            fmt.phoneme_alphabet = frozenset(_split_symbols(declared_phonemes, fmt.multichar))
            declared_phonemes = None

        try:
            entry, with_frequency = _parse_entry(line, line_number, fmt)
        except LexiconFormatError as e:
            if strict:
                raise
            logger.warning("Skipping malformed lexicon line: %s", e)
            continue

        has_frequency = has_frequency or with_frequency
        previous = first_line_of.get(entry.graphemes)
        if previous is None:
            first_line_of[entry.graphemes] = (line_number, entry.phonemes)
        else:
            kind = "duplicate entry" if previous[1] == entry.phonemes else "homograph"
            message = (
                f"line {line_number}: {kind} '{entry.graphemes}' "
                f"(first listed on line {previous[0]})"
            )
            warnings.append(message)
            logger.warning(message)
        entries.append(entry)

    if not entries:
        raise EmptyLexiconError("lexicon source contains no entries")

    declared = fmt.grapheme_alphabet is not None or fmt.phoneme_alphabet is not None
    grapheme_alphabet = fmt.grapheme_alphabet or frozenset(
        letter for entry in entries for letter in entry.graphemes
    )
    phoneme_alphabet = fmt.phoneme_alphabet or frozenset(
        phoneme for entry in entries for phoneme in entry.phonemes
    )
    try:
        lexicon = Lexicon(
            entries=tuple(entries),
            grapheme_alphabet=grapheme_alphabet,
            phoneme_alphabet=phoneme_alphabet | {fmt.null_symbol},
            null_symbol=fmt.null_symbol,
            multichar=fmt.multichar,
            has_frequency=has_frequency,
            declared_alphabets=declared,
            warnings=tuple(warnings),
        )
    except ValidationError as e:
        raise LexiconFormatError(str(e)) from e

    logger.info(
        "Parsed lexicon: %d entries, %d letters, %d phonemes",
        len(lexicon),
        len(lexicon.grapheme_alphabet),
        len(lexicon.phoneme_alphabet),
    )
    return lexicon


def serialize_lexicon(lexicon: Lexicon) -> str:
    """Write a lexicon back to the text format; headers only when non-default."""
    lines: list[str] = []
    if lexicon.null_symbol != DEFAULT_NULL_SYMBOL:
        lines.append(f"#null={lexicon.null_symbol}")
    if lexicon.multichar:
        lines.append("#multichar=true")
    if lexicon.declared_alphabets:
        separator = " " if lexicon.multichar else ""
        lines.append(f"#graphemes={separator.join(sorted(lexicon.grapheme_alphabet))}")
        lines.append(f"#phonemes={separator.join(sorted(lexicon.phoneme_alphabet))}")
    for entry in lexicon.entries:
        fields = [entry.graphemes, lexicon.format_phonemes(entry.phonemes)]
        if lexicon.has_frequency:
            fields.append(str(entry.word_freq))
        lines.append("\t".join(fields))
    return "\n".join(lines) + "\n"


def read_lexicon_file(path, fmt: LexiconFormat | None = None, strict: bool = True) -> Lexicon:
    """Parse a UTF-8 lexicon file from disk."""
    with open(path, encoding="utf-8") as f:
        return parse_lexicon(f, fmt=fmt, strict=strict)
