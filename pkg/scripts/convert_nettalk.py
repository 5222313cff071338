"""Convert the public NETTALK data file into the aligned lexicon format.

NETTALK rows are ``word<TAB>phonemes<TAB>stress<TAB>class`` with one phoneme
(or ``-``) per letter. Stress is dropped: evaluation compares segments only.
Lines that are not four tab-separated fields (the file's preamble) are skipped.

Usage:
    python scripts/convert_nettalk.py nettalk.data nettalk.tsv
"""

import argparse
import sys
from pathlib import Path


def convert_line(line: str) -> str | None:
    """Return the lexicon row for one NETTALK line, or None to skip it."""
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 4:
        return None
    word, phonemes = fields[0].strip(), fields[1].strip()
    if not word or len(word) != len(phonemes):
        return None
    return f"{word}\t{phonemes}"


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("source", type=Path, help="nettalk.data")
    parser.add_argument("output", type=Path, help="Lexicon file to write")
    args = parser.parse_args(argv)

    rows = []
    skipped = 0
    with open(args.source, encoding="latin-1") as f:
        for line in f:
            row = convert_line(line)
            if row is None:
                skipped += 1
            else:
                rows.append(row)

    args.output.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"Wrote {len(rows)} entries to {args.output} ({skipped} lines skipped)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
