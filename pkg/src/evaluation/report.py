"""Evaluation report models, text rendering and fold-level significance."""

import math
from statistics import fmean

from pydantic import BaseModel, Field
from scipy import stats

from src.evaluation.splits import SplitSpec

REPORT_SCHEMA_VERSION = 1


class EvalCounts(BaseModel):
    """Raw tallies; rates are derived from them."""

    words: int = 0
    correct_words: int = 0
    silent_words: int = 0
    phonemes: int = Field(default=0, description="Reference phonemes over all test words.")
    correct: int = 0
    substitutions: int = 0
    insertions: int = 0
    deletions: int = 0
    nonsilent_phonemes: int = 0
    nonsilent_correct: int = 0

    def __add__(self, other: "EvalCounts") -> "EvalCounts":
        return EvalCounts(
            **{name: getattr(self, name) + getattr(other, name) for name in EvalCounts.model_fields}
        )


class Rates(BaseModel):
    word_accuracy: float
    phoneme_accuracy: float = Field(description="Silent words count as all phonemes wrong.")
    phoneme_accuracy_nonsilent: float | None = Field(
        description="Silent words excluded; null when every word was silent."
    )
    silence_rate: float

    @classmethod
    def from_counts(cls, counts: EvalCounts) -> "Rates":
        """Derive the rates of one fold."""
        return cls(
            word_accuracy=counts.correct_words / counts.words if counts.words else 0.0,
            phoneme_accuracy=counts.correct / counts.phonemes if counts.phonemes else 0.0,
            phoneme_accuracy_nonsilent=(
                counts.nonsilent_correct / counts.nonsilent_phonemes
                if counts.nonsilent_phonemes
                else None
            ),
            silence_rate=counts.silent_words / counts.words if counts.words else 0.0,
        )


class FoldReport(Rates):
    fold: int
    train_size: int
    test_size: int
    counts: EvalCounts


class AggregateReport(Rates):
    """Unweighted mean of the fold rates; counts are pooled."""

    counts: EvalCounts

    @classmethod
    def from_folds(cls, folds: list[FoldReport]) -> "AggregateReport":
        """Average fold rates; the nonsilent rate averages only the folds that have one."""
        nonsilent = [
            f.phoneme_accuracy_nonsilent for f in folds if f.phoneme_accuracy_nonsilent is not None
        ]
        counts = EvalCounts()
        for fold in folds:
            counts = counts + fold.counts
        return cls(
            word_accuracy=fmean(f.word_accuracy for f in folds),
            phoneme_accuracy=fmean(f.phoneme_accuracy for f in folds),
            phoneme_accuracy_nonsilent=fmean(nonsilent) if nonsilent else None,
            silence_rate=fmean(f.silence_rate for f in folds),
            counts=counts,
        )


class EvalReport(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    mode: str = Field(description="Report label of the recombination mode.")
    tie_break: str
    min_chunk_len: int
    split: SplitSpec
    folds: list[FoldReport]
    aggregate: AggregateReport


class Significance(BaseModel):
    """Two-tailed paired t-test over per-fold values."""

    folds: int
    mean_difference: float
    statistic: float | None
    p_value: float | None


def paired_significance(first: list[float], second: list[float]) -> Significance:
    """Compare two systems evaluated on the same folds.

    Returns a null statistic and p-value when fewer than two folds are given or
    every difference is identical.
    """
    if len(first) != len(second):
        raise ValueError("paired samples must have the same number of folds")
    differences = [a - b for a, b in zip(first, second)]
    mean_difference = fmean(differences) if differences else 0.0
    if len(differences) < 2:
        return Significance(folds=len(differences), mean_difference=mean_difference, statistic=None, p_value=None)

    result = stats.ttest_rel(first, second)
    statistic = float(result.statistic)
    p_value = float(result.pvalue)
    return Significance(
        folds=len(differences),
        mean_difference=mean_difference,
        statistic=None if math.isnan(statistic) else statistic,
        p_value=None if math.isnan(p_value) else p_value,
    )


def _percent(value: float | None) -> str:
    return "-" if value is None else f"{100 * value:6.2f}"


def render_text(report: EvalReport) -> str:
    """Aligned-column summary of a report, one row per fold plus the mean."""
    header = f"{'fold':>5} {'train':>7} {'test':>6} {'%words':>7} {'%phon':>7} {'%phon*':>7} {'%sil':>7}"
    lines = [
        f"mode={report.mode} tie_break={report.tie_break} min_chunk_len={report.min_chunk_len} "
        f"folds={report.split.fold_count} test_fraction={report.split.test_fraction} "
        f"seed={report.split.rng_seed}",
        header,
        "-" * len(header),
    ]
    for fold in report.folds:
        lines.append(
            f"{fold.fold:>5} {fold.train_size:>7} {fold.test_size:>6} "
            f"{_percent(fold.word_accuracy):>7} {_percent(fold.phoneme_accuracy):>7} "
            f"{_percent(fold.phoneme_accuracy_nonsilent):>7} {_percent(fold.silence_rate):>7}"
        )
    aggregate = report.aggregate
    lines.append("-" * len(header))
    lines.append(
        f"{'mean':>5} {'':>7} {'':>6} "
        f"{_percent(aggregate.word_accuracy):>7} {_percent(aggregate.phoneme_accuracy):>7} "
        f"{_percent(aggregate.phoneme_accuracy_nonsilent):>7} {_percent(aggregate.silence_rate):>7}"
    )
    lines.append("%phon* excludes silent words")
    return "\n".join(lines) + "\n"


class ComparisonReport(BaseModel):
    """Two modes evaluated on the same folds, with paired tests on the fold rates."""

    schema_version: int = REPORT_SCHEMA_VERSION
    baseline: EvalReport
    challenger: EvalReport
    word_accuracy: Significance
    phoneme_accuracy: Significance

    @classmethod
    def from_reports(cls, baseline: EvalReport, challenger: EvalReport) -> "ComparisonReport":
        if [f.fold for f in baseline.folds] != [f.fold for f in challenger.folds]:
            raise ValueError("reports were not evaluated on the same folds")
        return cls(
            baseline=baseline,
            challenger=challenger,
            word_accuracy=paired_significance(
                [f.word_accuracy for f in baseline.folds],
                [f.word_accuracy for f in challenger.folds],
            ),
            phoneme_accuracy=paired_significance(
                [f.phoneme_accuracy for f in baseline.folds],
                [f.phoneme_accuracy for f in challenger.folds],
            ),
        )


def render_comparison(comparison: ComparisonReport) -> str:
    """Both reports followed by the paired-test summary."""

    def describe(name: str, result: Significance) -> str:
        if result.p_value is None:
            return f"{name}: mean difference {100 * result.mean_difference:+.2f} points, no test possible"
        return (
            f"{name}: mean difference {100 * result.mean_difference:+.2f} points, "
            f"t={result.statistic:.3f}, p={result.p_value:.4f} ({result.folds} folds)"
        )

    return "\n".join(
        [
            render_text(comparison.baseline),
            render_text(comparison.challenger),
            f"{comparison.baseline.mode} minus {comparison.challenger.mode}, paired t-test",
            describe("word accuracy", comparison.word_accuracy),
            describe("phoneme accuracy", comparison.phoneme_accuracy),
            "",
        ]
    )
