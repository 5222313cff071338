"""Tests for the fold protocol: splits, phoneme alignment, reports and the evaluation graph."""

import os
import random

import pytest
from pydantic import ValidationError

from src.configuration import Configuration
from src.core.error_handling import SplitError
from src.evaluation import (
    ComparisonReport,
    EvalReport,
    FoldSplit,
    SplitSpec,
    align_phonemes,
    closest_reference,
    generate_splits,
    paired_significance,
    render_comparison,
    render_text,
)
from src.evaluation.evaluation_graph import evaluate, evaluate_split, evaluation_app
from src.lexicon import parse_lexicon, read_lexicon_file
from src.ranker import RankingPolicy

SMALL_LEXICON = [
    "hot\th@t",
    "hose\thOz-",
    "slope\tslOp-",
    "slop\tsl@p",
    "shop\tS-@p",
    "hope\thOp-",
    "rope\trOp-",
    "rose\trOz-",
    "pose\tpOz-",
    "posh\tp@S-",
    "lot\tl@t",
    "lope\tlOp-",
    "top\tt@p",
    "tope\ttOp-",
    "stop\tst@p",
    "shot\tS-@t",
    "slot\tsl@t",
    "note\tnOt-",
    "not\tn@t",
    "nose\tnOz-",
]


@pytest.fixture
def small_lexicon():
    return parse_lexicon(SMALL_LEXICON)


# --- align_phonemes ---


@pytest.mark.parametrize(
    "hypothesis, reference, expected",
    [
        ("hOp", "hOp", (3, 0, 0, 0)),
        ("@p", "hOp", (1, 1, 0, 1)),
        ("", "ab", (0, 0, 0, 2)),
        ("abc", "ac", (2, 0, 1, 0)),
        ("xyz", "abc", (0, 3, 0, 0)),
    ],
)
def test_align_phonemes(hypothesis, reference, expected):
    assert align_phonemes(tuple(hypothesis), tuple(reference)) == expected


def test_align_multichar_phonemes():
    alignment = align_phonemes(("tS", "a"), ("S", "a"))

    assert alignment == (1, 1, 0, 0)
    assert alignment.cost == 1


def test_closest_reference_prefers_cheapest_then_first():
    reference, alignment = closest_reference(tuple("rEd"), [tuple("rid"), tuple("rEd")])

    assert reference == tuple("rEd")
    assert alignment.cost == 0
    assert closest_reference(tuple("rad"), [tuple("rid"), tuple("rEd")])[0] == tuple("rid")


def _random_phonemes(rng: random.Random) -> tuple[str, ...]:
    return tuple(rng.choice(["a", "b", "c", "tS"]) for _ in range(rng.randint(0, 6)))


def test_edit_cost_is_a_metric():
    rng = random.Random(17)
    for _ in range(300):
        a, b, c = (_random_phonemes(rng) for _ in range(3))
        ab = align_phonemes(a, b).cost
        assert ab == align_phonemes(b, a).cost
        assert (ab == 0) == (a == b)
        assert align_phonemes(a, c).cost <= ab + align_phonemes(b, c).cost


# --- splits ---


def test_splits_are_disjoint_and_cover(small_lexicon):
    splits = generate_splits(small_lexicon, SplitSpec(fold_count=10, test_fraction=0.1, rng_seed=42))

    assert len(splits) == 10
    assert [s.fold for s in splits] == list(range(10))
    for split in splits:
        assert len(split.test) == 2
        assert set(split.train).isdisjoint(split.test)
        assert sorted(split.train + split.test) == list(range(len(small_lexicon)))


def test_splits_are_reproducible(small_lexicon):
    spec = SplitSpec(fold_count=5, test_fraction=0.25, rng_seed=3)

    assert generate_splits(small_lexicon, spec) == generate_splits(small_lexicon, spec)
    other = generate_splits(small_lexicon, spec.model_copy(update={"rng_seed": 4}))
    assert other != generate_splits(small_lexicon, spec)


@pytest.mark.parametrize(
    "size, fraction",
    [
        (5, 0.1),  # rounds to no test entry
        (2, 0.9),  # leaves no learning entry
    ],
)
def test_degenerate_splits_are_rejected(small_lexicon, size, fraction):
    with pytest.raises(SplitError):
        generate_splits(small_lexicon.subset(range(size)), SplitSpec(test_fraction=fraction))


def test_split_spec_validation():
    with pytest.raises(ValidationError):
        SplitSpec(test_fraction=0)
    with pytest.raises(ValidationError):
        SplitSpec(test_fraction=1)
    with pytest.raises(ValidationError):
        SplitSpec(fold_count=0)


# --- evaluate_split ---


def test_wrong_pronunciation_is_scored_per_phoneme(hope_lexicon):
    split = FoldSplit(fold=0, train=(0, 1, 2, 4), test=(3,))

    report = evaluate_split(hope_lexicon, split, RankingPolicy())

    assert report.counts.words == 1
    assert report.counts.correct_words == 0
    assert report.counts.phonemes == 4
    assert report.counts.correct == 3
    assert report.counts.substitutions == 1
    assert report.word_accuracy == 0
    assert report.phoneme_accuracy == pytest.approx(0.75)
    assert report.phoneme_accuracy_nonsilent == pytest.approx(0.75)
    assert report.silence_rate == 0


def test_silent_word_counts_every_phoneme_wrong(hope_lexicon):
    split = FoldSplit(fold=0, train=(1, 2, 3, 4), test=(0,))

    report = evaluate_split(hope_lexicon, split, RankingPolicy())

    assert report.counts.silent_words == 1
    assert report.counts.deletions == 3
    assert report.phoneme_accuracy == 0
    assert report.phoneme_accuracy_nonsilent is None
    assert report.silence_rate == 1


def test_any_listed_homograph_pronunciation_is_correct():
    lexicon = parse_lexicon(["read\tri-d", "read\trE-d", "bread\tbrE-d", "reed\tri-d"])
    split = FoldSplit(fold=0, train=(1, 2, 3), test=(0,))

    report = evaluate_split(lexicon, split, RankingPolicy())

    assert report.counts.correct_words == 1
    assert report.counts.correct == report.counts.phonemes == 3


# --- evaluate and reports ---


def test_evaluate_report_structure(small_lexicon):
    spec = SplitSpec(fold_count=4, test_fraction=0.2, rng_seed=1)

    report = evaluate(small_lexicon, spec, RankingPolicy(mode="smpa"))

    assert isinstance(report, EvalReport)
    assert report.mode == "smpa"
    assert [f.fold for f in report.folds] == [0, 1, 2, 3]
    assert all(f.test_size == 4 and f.train_size == 16 for f in report.folds)
    assert report.aggregate.counts.words == 16
    assert report.aggregate.word_accuracy == pytest.approx(
        sum(f.word_accuracy for f in report.folds) / 4
    )
    assert EvalReport.model_validate_json(report.model_dump_json()) == report


def test_evaluate_is_deterministic(small_lexicon):
    spec = SplitSpec(fold_count=3, test_fraction=0.2, rng_seed=9)

    first = evaluate(small_lexicon, spec, RankingPolicy())
    second = evaluate(small_lexicon, spec, RankingPolicy())

    assert first == second


@pytest.mark.parametrize("workers", [None, 2, 4])
def test_concurrent_folds_match_sequential_run(small_lexicon, workers):
    spec = SplitSpec(fold_count=4, test_fraction=0.2, rng_seed=5)

    sequential = evaluate(small_lexicon, spec, RankingPolicy(), Configuration(max_fold_workers=1))
    concurrent = evaluate(small_lexicon, spec, RankingPolicy(), Configuration(max_fold_workers=workers))

    assert concurrent == sequential
    assert [f.fold for f in concurrent.folds] == [0, 1, 2, 3]


def test_pronounce_report_is_labelled_overlap1(small_lexicon):
    report = evaluate(small_lexicon, SplitSpec(fold_count=2, test_fraction=0.2), RankingPolicy(mode="pronounce"))

    assert report.mode == "overlap1"


def test_headtail_is_silent_at_least_as_often_as_smpa(small_lexicon):
    spec = SplitSpec(fold_count=5, test_fraction=0.3, rng_seed=5)

    smpa = evaluate(small_lexicon, spec, RankingPolicy(mode="smpa"))
    headtail = evaluate(small_lexicon, spec, RankingPolicy(mode="headtail"))

    for smpa_fold, headtail_fold in zip(smpa.folds, headtail.folds):
        assert headtail_fold.counts.silent_words >= smpa_fold.counts.silent_words
    assert headtail.aggregate.silence_rate >= smpa.aggregate.silence_rate


def test_evaluate_reads_configuration(small_lexicon):
    configuration = Configuration(mode="headtail", fold_count=2, test_fraction=0.2, seed=4, max_fold_workers=1)

    report = evaluate(small_lexicon, configuration=configuration)

    assert report.mode == "headtail"
    assert report.split == SplitSpec(fold_count=2, test_fraction=0.2, rng_seed=4)


def test_render_text(small_lexicon):
    report = evaluate(small_lexicon, SplitSpec(fold_count=2, test_fraction=0.2), RankingPolicy())

    text = render_text(report)

    assert text.splitlines()[0].startswith("mode=smpa")
    assert "%words" in text
    assert "mean" in text


def test_paired_significance():
    result = paired_significance([0.5, 0.6, 0.7], [0.4, 0.6, 0.5])

    assert result.folds == 3
    assert result.mean_difference == pytest.approx(0.1)
    assert result.statistic == pytest.approx(3**0.5)
    assert 0.2 < result.p_value < 0.25


def test_paired_significance_degenerate_inputs():
    assert paired_significance([0.5], [0.4]).p_value is None
    assert paired_significance([0.5, 0.5], [0.5, 0.5]).p_value is None
    with pytest.raises(ValueError):
        paired_significance([0.5], [0.4, 0.3])


def test_comparison_report(small_lexicon):
    spec = SplitSpec(fold_count=3, test_fraction=0.2, rng_seed=2)
    smpa = evaluate(small_lexicon, spec, RankingPolicy(mode="smpa"))
    pronounce = evaluate(small_lexicon, spec, RankingPolicy(mode="pronounce"))

    comparison = ComparisonReport.from_reports(smpa, pronounce)

    assert comparison.word_accuracy.folds == 3
    assert "paired t-test" in render_comparison(comparison)


# --- evaluation graph ---


@pytest.mark.asyncio
async def test_evaluation_graph_fans_out_folds(small_lexicon):
    # --- Arrange ---
    state = {
        "lexicon": small_lexicon,
        "split_spec": SplitSpec(fold_count=3, test_fraction=0.2, rng_seed=8),
        "policy": RankingPolicy(mode="smpa"),
    }

    # --- Act ---
    result = await evaluation_app.ainvoke(state, config={"configurable": {"min_chunk_len": 2}})

    # --- Assert ---
    assert len(result["fold_reports"]) == 3
    assert [f.fold for f in result["report"].folds] == [0, 1, 2]
    assert len(result["splits"]) == 3


@pytest.mark.asyncio
async def test_evaluation_graph_propagates_split_errors(small_lexicon):
    with pytest.raises(SplitError):
        await evaluation_app.ainvoke(
            {"lexicon": small_lexicon.subset(range(3)), "split_spec": SplitSpec(test_fraction=0.1)}
        )


# --- public lexicon ---


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("NETTALK_LEXICON"), reason="NETTALK_LEXICON is not set")
def test_nettalk_accuracy_ranges():
    lexicon = read_lexicon_file(os.environ["NETTALK_LEXICON"])
    spec = SplitSpec(fold_count=10, test_fraction=0.1, rng_seed=0)

    smpa = evaluate(lexicon, spec, RankingPolicy(mode="smpa"))
    pronounce = evaluate(lexicon, spec, RankingPolicy(mode="pronounce"))
    headtail = evaluate(lexicon, spec, RankingPolicy(mode="headtail"))

    assert smpa.aggregate.word_accuracy == pytest.approx(0.6396, abs=0.03)
    assert smpa.aggregate.phoneme_accuracy == pytest.approx(0.9319, abs=0.015)
    assert pronounce.aggregate.word_accuracy == pytest.approx(0.5656, abs=0.03)
    assert smpa.aggregate.silence_rate <= 0.025
    assert 0.10 <= headtail.aggregate.silence_rate <= 0.20
