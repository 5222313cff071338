"""Command-line surface: index building, transcription, evaluation and lattice inspection.

Exit codes: 0 on success (a silent word included), 1 on a data error in the
inputs, 2 on a usage or file-system error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv
from pydantic import ValidationError

from src.chunk_index import ChunkIndex, build_index, load_index, load_or_build, save_index
from src.configuration import Configuration
from src.core.error_handling import GraphError, TranscriptionError, UnknownModeError
from src.evaluation import ComparisonReport, EvalReport, render_comparison, render_text
from src.lattice import build_lattice, enumerate_paths, export_dot
from src.lexicon import read_lexicon_file
from src.ranker import Candidate, RankingPolicy, TieBreak, TranscriptionResult, transcribe_word
from src.recombination_modes import RecombinationModeRegistry
from src.utils import configure_logging

logger = logging.getLogger(__name__)

SILENCE_MARKER = "<silence>"

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2


class _UsageError(Exception):
    """Flag combination argparse cannot express; reported like a parse error."""


SCHEMAS = {
    "transcription": TranscriptionResult,
    "eval": EvalReport,
    "comparison": ComparisonReport,
}


def _mode_name(value: str) -> str:
    try:
        return RecombinationModeRegistry.get(value).name
    except UnknownModeError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid int value: '{value}'") from None
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {number}")
    return number


def format_score(candidate: Candidate) -> str:
    """Exact rational followed by its decimal value, e.g. ``5/8 (0.625)``."""
    return f"{candidate.score} ({float(candidate.score):.3f})"


def _add_ranking_options(parser: argparse.ArgumentParser, defaults: Configuration) -> None:
    parser.add_argument("--mode", type=_mode_name, default=defaults.mode, help="smpa, pronounce (overlap1) or headtail")
    parser.add_argument(
        "--tie-break",
        choices=[t.value for t in TieBreak],
        default=defaults.tie_break,
        help="Frequency aggregate used between equally scored candidates",
    )
    parser.add_argument("--min-chunk-len", type=_positive_int, default=defaults.min_chunk_len)
    parser.add_argument(
        "--weighted",
        action="store_true",
        default=defaults.weight_by_word_freq,
        help="Weight chunk counts by word frequency",
    )


def _add_source_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lexicon", type=Path, help="Aligned lexicon file")
    parser.add_argument(
        "--index",
        type=Path,
        help="Index cache; with --lexicon it is reused when current and rebuilt otherwise",
    )


def build_parser(defaults: Configuration | None = None) -> argparse.ArgumentParser:
    """Create the argument parser; ``defaults`` seeds every tunable option."""
    defaults = defaults or Configuration()
    parser = argparse.ArgumentParser(
        prog="smpa-g2p",
        description="Letter-to-phoneme transcription by recombining lexicon chunks.",
    )
    parser.add_argument("--log-level", default=defaults.log_level, help="Logging level (default: %(default)s)")
    parser.set_defaults(lexicon_format=defaults.get_lexicon_format())
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build-index", help="Build and cache the chunk index of a lexicon")
    build.add_argument("lexicon", type=Path)
    build.add_argument("-o", "--output", type=Path, required=True, help="Cache file to write")
    build.add_argument("--min-chunk-len", type=_positive_int, default=defaults.min_chunk_len)
    build.add_argument("--weighted", action="store_true", default=defaults.weight_by_word_freq)
    build.set_defaults(handler=cmd_build_index)

    transcribe = subparsers.add_parser("transcribe", help="Pronounce one or more words")
    transcribe.add_argument("words", nargs="+")
    _add_source_options(transcribe)
    _add_ranking_options(transcribe, defaults)
    transcribe.add_argument("-k", type=_positive_int, default=defaults.k, help="Candidates per word")
    transcribe.add_argument("--format", choices=["json", "text"], default="text")
    transcribe.add_argument("--dot", type=Path, help="Write the lattice of the (single) word to this file")
    transcribe.set_defaults(handler=cmd_transcribe)

    evaluate = subparsers.add_parser("eval", help="Run the random-fold evaluation protocol")
    evaluate.add_argument("lexicon", type=Path)
    _add_ranking_options(evaluate, defaults)
    evaluate.add_argument("--folds", type=_positive_int, default=defaults.fold_count)
    evaluate.add_argument("--test-frac", type=float, default=defaults.test_fraction)
    evaluate.add_argument("--seed", type=int, default=defaults.seed)
    evaluate.add_argument("--workers", type=_positive_int, default=defaults.max_fold_workers, help="Folds evaluated at once")
    evaluate.add_argument(
        "--compare",
        type=_mode_name,
        metavar="MODE",
        help="Also evaluate MODE on the same folds and test the difference",
    )
    evaluate.add_argument("--format", choices=["json", "text"], default="json")
    evaluate.set_defaults(handler=cmd_eval)

    lattice = subparsers.add_parser("lattice", help="Print the pronunciation lattice of a word as DOT")
    lattice.add_argument("word")
    _add_source_options(lattice)
    _add_ranking_options(lattice, defaults)
    lattice.add_argument("-o", "--output", type=Path, help="Write to this file instead of stdout")
    lattice.add_argument(
        "--paths",
        action="store_true",
        help=f"List up to {defaults.path_limit} complete paths instead of the DOT graph",
    )
    lattice.set_defaults(handler=cmd_lattice, path_limit=defaults.path_limit)

    schema = subparsers.add_parser("schema", help="Print the JSON schema of an output document")
    schema.add_argument("document", choices=sorted(SCHEMAS))
    schema.set_defaults(handler=cmd_schema)

    return parser


def _load_index(args: argparse.Namespace) -> ChunkIndex:
    if args.lexicon is None and args.index is None:
        raise _UsageError("one of --lexicon or --index is required")
    if args.lexicon is None:
        return load_index(args.index).to_index()
    lexicon = read_lexicon_file(args.lexicon, args.lexicon_format)
    return load_or_build(lexicon, args.index, args.min_chunk_len, args.weighted)


def cmd_build_index(args: argparse.Namespace) -> int:
    lexicon = read_lexicon_file(args.lexicon, args.lexicon_format)
    index = build_index(lexicon, args.min_chunk_len, args.weighted)
    save_index(index, args.output, lexicon.content_hash())
    print(
        f"{args.output}: {index.chunk_count()} chunks, {index.occurrence_count()} occurrences "
        f"from {len(lexicon)} entries (min_chunk_len={index.min_chunk_len})"
    )
    return EXIT_OK


def _render_result(result: TranscriptionResult) -> str:
    if result.silent:
        return f"{result.word}\t{SILENCE_MARKER}"
    display_name = RecombinationModeRegistry.get(result.mode).display_name
    lines = [f"{result.word}\t{display_name}"]
    for rank, candidate in enumerate(result.candidates, start=1):
        separator = " " if any(len(p) > 1 for p in candidate.merged) else ""
        lines.append(
            f"  {rank}. {separator.join(candidate.surface)}\t{format_score(candidate)}"
            f"\tchunks={candidate.chunk_count} freq={candidate.freq_key}"
        )
        for chunk in candidate.path:
            lines.append(
                f"       {chunk.graphemic}[{chunk.start},{chunk.end})/"
                f"{separator.join(chunk.phonemic)} x{chunk.freq}"
            )
    return "\n".join(lines)


def cmd_transcribe(args: argparse.Namespace) -> int:
    if args.dot is not None and len(args.words) != 1:
        raise _UsageError("--dot needs exactly one word")
    policy = RankingPolicy(mode=args.mode, tie_break=args.tie_break, k=args.k)
    index = _load_index(args)
    for word in args.words:
        result = transcribe_word(word, index, policy)
        if args.format == "json":
            print(result.model_dump_json())
        else:
            print(_render_result(result))
    if args.dot is not None:
        word = args.words[0]
        lattice = build_lattice(word, index.match_word(word), policy.recombination_mode)
        args.dot.write_text(export_dot(lattice), encoding="utf-8")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    from src.evaluation.evaluation_graph import evaluate

    configuration = Configuration(
        mode=args.mode,
        tie_break=args.tie_break,
        min_chunk_len=args.min_chunk_len,
        weight_by_word_freq=args.weighted,
        seed=args.seed,
        fold_count=args.folds,
        test_fraction=args.test_frac,
        max_fold_workers=args.workers,
    )
    lexicon = read_lexicon_file(args.lexicon, args.lexicon_format)
    split_spec = configuration.get_split_spec()
    report = evaluate(lexicon, split_spec, configuration.get_ranking_policy(), configuration)
    if args.compare is None:
        if args.format == "json":
            print(report.model_dump_json(indent=2))
        else:
            print(render_text(report), end="")
        return EXIT_OK

    challenger_policy = RankingPolicy(mode=args.compare, tie_break=args.tie_break)
    challenger = evaluate(lexicon, split_spec, challenger_policy, configuration)
    comparison = ComparisonReport.from_reports(report, challenger)
    if args.format == "json":
        print(comparison.model_dump_json(indent=2))
    else:
        print(render_comparison(comparison), end="")
    return EXIT_OK


def cmd_lattice(args: argparse.Namespace) -> int:
    index = _load_index(args)
    lattice = build_lattice(args.word, index.match_word(args.word), args.mode)
    if args.paths:
        lines = [
            " ".join(f"{args.word[n.start:n.end]}[{n.start},{n.end})" for n in path)
            for path in enumerate_paths(lattice, args.path_limit)
        ]
        text = "\n".join(lines) + "\n" if lines else ""
    else:
        text = export_dot(lattice)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_schema(args: argparse.Namespace) -> int:
    print(json.dumps(SCHEMAS[args.document].model_json_schema(mode="serialization"), indent=2))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Parse ``argv`` and run the chosen subcommand; returns the exit code."""
    load_dotenv()
    try:
        defaults = Configuration.from_runnable_config()
    except ValidationError as e:
        print(f"error: invalid SMPA_ environment setting: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        return args.handler(args)
    except _UsageError as e:
        parser.error(str(e))
    except OSError as e:
        path = e.filename if e.filename is not None else ""
        reason = e.strerror or str(e)
        print(f"error: {path}: {reason}" if path else f"error: {reason}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except ValidationError as e:
        print(f"error: invalid option: {e}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    except TranscriptionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except GraphError as e:
        logger.debug("Graph failure state: %s", e.state)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR
    return EXIT_USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
