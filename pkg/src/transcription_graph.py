from langchain_core.runnables import RunnableConfig
from langgraph.graph import END, START, StateGraph
from langgraph.graph.state import CompiledStateGraph

from src.configuration import Configuration
from src.core.error_handling import with_error_handling
from src.lattice.builder import build_lattice
from src.ranker import TranscriptionResult, best_candidates
from src.state import TranscriptionState, TranscriptionStateInput
from src.utils import OperationCounter


@with_error_handling
def collect_chunks(state: TranscriptionState) -> TranscriptionState:
    """Find every indexed chunk occurring in the word."""
    counter = OperationCounter()
    matches = state["index"].match_word(state["word"], counter=counter)
    return {"matches": matches, "operation_counts": dict(counter)}


@with_error_handling
def build_word_lattice(state: TranscriptionState, config: RunnableConfig) -> TranscriptionState:
    """Join the matches into the lattice of the configured recombination mode."""
    configurable = Configuration.from_runnable_config(config)
    counter = OperationCounter(state.get("operation_counts", {}))
    lattice = build_lattice(
        state["word"], state["matches"], configurable.mode, counter=counter
    )
    return {"lattice": lattice, "operation_counts": dict(counter)}


@with_error_handling
def select_candidates(state: TranscriptionState, config: RunnableConfig) -> TranscriptionState:
    """Rank the distinct pronunciations; no candidate means the word stays silent."""
    policy = Configuration.from_runnable_config(config).get_ranking_policy()
    counter = OperationCounter(state.get("operation_counts", {}))
    candidates = best_candidates(
        state["lattice"], policy, state["index"].null_symbol, counter=counter
    )
    result = TranscriptionResult(word=state["word"], mode=policy.mode, candidates=candidates)
    return {"result": result, "operation_counts": dict(counter)}


def create_transcription_graph() -> CompiledStateGraph:
    """Create and return the single-word transcription graph."""
    graph = StateGraph(
        TranscriptionState, input_schema=TranscriptionStateInput, config_schema=Configuration
    )

    graph.add_node("collect_chunks", collect_chunks)
    graph.add_node("build_lattice", build_word_lattice)
    graph.add_node("select_candidates", select_candidates)

    graph.add_edge(START, "collect_chunks")
    graph.add_edge("collect_chunks", "build_lattice")
    graph.add_edge("build_lattice", "select_candidates")
    graph.add_edge("select_candidates", END)

    return graph.compile()


transcription_app = create_transcription_graph()
