"""Fold-protocol evaluation as a graph: split, evaluate every fold in parallel, aggregate."""

import logging

from langchain_core.runnables import RunnableConfig
from langgraph.graph import END, START, StateGraph
from langgraph.graph.state import CompiledStateGraph
from langgraph.types import Send

from src.chunk_index.index import build_index
from src.configuration import Configuration
from src.core.error_handling import with_error_handling
from src.evaluation.metrics import align_phonemes, closest_reference
from src.evaluation.report import AggregateReport, EvalCounts, EvalReport, FoldReport, Rates
from src.evaluation.splits import FoldSplit, SplitSpec
from src.evaluation.splits import generate_splits as draw_splits
from src.lexicon.models import Lexicon, strip_nulls
from src.ranker import RankingPolicy, transcribe
from src.state import EvaluationState, EvaluationStateInput, FoldState

logger = logging.getLogger(__name__)


def evaluate_split(
    lexicon: Lexicon,
    split: FoldSplit,
    policy: RankingPolicy,
    min_chunk_len: int = 2,
    weight_by_word_freq: bool = False,
) -> FoldReport:
    """Index the learning entries and transcribe every test entry.

    Every pronunciation the full lexicon lists for a test word counts as a
    correct answer. The phoneme score uses the listed pronunciation closest
    to the hypothesis; a silent word is scored against its own entry, all
    phonemes deleted.
    """
    index = build_index(
        lexicon.subset(split.train),
        min_chunk_len=min_chunk_len,
        weight_by_word_freq=weight_by_word_freq,
    )
    null = lexicon.null_symbol
    tally = dict.fromkeys(EvalCounts.model_fields, 0)
    for position in split.test:
        entry = lexicon.entries[position]
        own = strip_nulls(entry.phonemes, null)
        references = [own] + [p for p in lexicon.pronunciations(entry.graphemes) if p != own]
        candidate = transcribe(entry.graphemes, index, policy)
        tally["words"] += 1
        if candidate is None:
            alignment = align_phonemes((), own)
            tally["silent_words"] += 1
            reference = own
        else:
            reference, alignment = closest_reference(candidate.surface, references)
            if candidate.surface in references:
                tally["correct_words"] += 1
            tally["nonsilent_phonemes"] += len(reference)
            tally["nonsilent_correct"] += alignment.correct
        tally["phonemes"] += len(reference)
        tally["correct"] += alignment.correct
        tally["substitutions"] += alignment.substitutions
        tally["insertions"] += alignment.insertions
        tally["deletions"] += alignment.deletions

    counts = EvalCounts(**tally)
    rates = Rates.from_counts(counts)
    logger.info(
        "Fold %d: %.2f%% words correct, %d silent of %d",
        split.fold,
        100 * rates.word_accuracy,
        counts.silent_words,
        counts.words,
    )
    return FoldReport(
        fold=split.fold,
        train_size=len(split.train),
        test_size=len(split.test),
        counts=counts,
        **rates.model_dump(),
    )


@with_error_handling
def generate_splits(state: EvaluationState, config: RunnableConfig) -> EvaluationState:
    """Draw the folds and settle the policy for this run."""
    configurable = Configuration.from_runnable_config(config)
    split_spec = state.get("split_spec") or configurable.get_split_spec()
    policy = state.get("policy") or configurable.get_ranking_policy()
    splits = draw_splits(state["lexicon"], split_spec)
    logger.info("Evaluating %d folds in %s mode", len(splits), policy.mode)
    return {"split_spec": split_spec, "policy": policy, "splits": splits}


def dispatch_folds(state: EvaluationState, config: RunnableConfig) -> list[Send]:
    """Fan out one evaluate_fold task per split."""
    configurable = Configuration.from_runnable_config(config)
    settings = {
        "min_chunk_len": configurable.min_chunk_len,
        "weight_by_word_freq": configurable.weight_by_word_freq,
    }
    return [
        Send(
            "evaluate_fold",
            {
                "lexicon": state["lexicon"],
                "split": split,
                "policy": state["policy"],
                "settings": settings,
            },
        )
        for split in state["splits"]
    ]


@with_error_handling
def evaluate_fold(state: FoldState) -> EvaluationState:
    report = evaluate_split(state["lexicon"], state["split"], state["policy"], **state["settings"])
    return {"fold_reports": [report]}


@with_error_handling
def aggregate(state: EvaluationState, config: RunnableConfig) -> EvaluationState:
    """Order the fold reports and average them."""
    configurable = Configuration.from_runnable_config(config)
    folds = sorted(state["fold_reports"], key=lambda report: report.fold)
    policy = state["policy"]
    report = EvalReport(
        mode=policy.recombination_mode.report_label,
        tie_break=str(policy.tie_break),
        min_chunk_len=configurable.min_chunk_len,
        split=state["split_spec"],
        folds=folds,
        aggregate=AggregateReport.from_folds(folds),
    )
    return {"report": report}


def create_evaluation_graph() -> CompiledStateGraph:
    """Create and return the evaluation graph."""
    graph = StateGraph(
        EvaluationState, input_schema=EvaluationStateInput, config_schema=Configuration
    )

    graph.add_node("generate_splits", generate_splits)
    graph.add_node("evaluate_fold", evaluate_fold)
    graph.add_node("aggregate", aggregate)

    graph.add_edge(START, "generate_splits")
    graph.add_conditional_edges("generate_splits", dispatch_folds, ["evaluate_fold"])
    graph.add_edge("evaluate_fold", "aggregate")
    graph.add_edge("aggregate", END)

    return graph.compile()


evaluation_app = create_evaluation_graph()


def evaluate(
    lexicon: Lexicon,
    split_spec: SplitSpec | None = None,
    policy: RankingPolicy | None = None,
    configuration: Configuration | None = None,
) -> EvalReport:
    """Run the fold protocol synchronously and return the report.

    ``split_spec`` and ``policy`` override the ones derived from ``configuration``.
    """
    configuration = configuration or Configuration()
    run_config: RunnableConfig = {"configurable": configuration.model_dump()}
    if configuration.max_fold_workers:
        run_config["max_concurrency"] = configuration.max_fold_workers
    state: dict = {"lexicon": lexicon}
    if split_spec is not None:
        state["split_spec"] = split_spec
    if policy is not None:
        state["policy"] = policy
    result = evaluation_app.invoke(state, config=run_config)
    return result["report"]
