"""Fold-protocol evaluation of the transcription engine.

Usage:
    from src.evaluation import SplitSpec, render_text
    from src.evaluation.evaluation_graph import evaluate

    report = evaluate(lexicon, SplitSpec(fold_count=10, test_fraction=0.1, rng_seed=0))
    print(render_text(report))

The graph lives in ``src.evaluation.evaluation_graph`` and is imported from
there; it depends on ``src.state``, which depends on this package's models.
"""

from src.evaluation.metrics import PhonemeAlignment, align_phonemes, closest_reference
from src.evaluation.report import (
    REPORT_SCHEMA_VERSION,
    AggregateReport,
    ComparisonReport,
    EvalCounts,
    EvalReport,
    FoldReport,
    Significance,
    paired_significance,
    render_comparison,
    render_text,
)
from src.evaluation.splits import FoldSplit, SplitSpec, generate_splits

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "AggregateReport",
    "ComparisonReport",
    "EvalCounts",
    "EvalReport",
    "FoldReport",
    "FoldSplit",
    "PhonemeAlignment",
    "Significance",
    "SplitSpec",
    "align_phonemes",
    "closest_reference",
    "generate_splits",
    "paired_significance",
    "render_comparison",
    "render_text",
]
