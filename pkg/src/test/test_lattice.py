"""Tests for lattice construction, path enumeration and DOT export."""

import random

import networkx as nx
import pytest

from src.chunk_index import ChunkMatch, build_index
from src.core.error_handling import LatticeConsistencyError
from src.lattice import END, START, build_lattice, enumerate_paths, export_dot, merge_path_phonemes, node_label
from src.lexicon import parse_lexicon
from src.utils import OperationCounter


def _spell(word, path) -> tuple:
    return tuple((node.start, node.end, "".join(node.phonemic)) for node in path)


@pytest.fixture
def hope_lattice(hope_index):
    return build_lattice("hope", hope_index.match_word("hope"), "smpa")


def test_hope_lattice_paths(hope_lattice):
    """Five S-to-E paths spelling three distinct pronunciations."""
    paths = {_spell("hope", p) for p in enumerate_paths(hope_lattice)}

    assert paths == {
        ((0, 2, "hO"), (1, 4, "Op-")),
        ((0, 2, "hO"), (1, 3, "Op"), (2, 4, "p-")),
        ((0, 2, "h@"), (1, 3, "@p"), (2, 4, "p-")),
        ((0, 2, "-@"), (1, 3, "@p"), (2, 4, "p-")),
        ((0, 3, "-@p"), (2, 4, "p-")),
    }
    merged = {"".join(merge_path_phonemes("hope", p)) for p in enumerate_paths(hope_lattice)}
    assert merged == {"hOp-", "h@p-", "-@p-"}


def test_hope_lattice_rejects_disagreeing_overlap(hope_lattice):
    hop = ChunkMatch(0, 3, ("-", "@", "p"), 1)
    ope = ChunkMatch(1, 4, ("O", "p", "-"), 1)

    assert hope_lattice.graph.has_node(hop)
    assert not hope_lattice.graph.has_edge(hop, ope)
    assert hope_lattice.graph.has_edge(START, hop)
    assert hope_lattice.graph.has_edge(ope, END)


def test_containment_and_abutment_get_no_arc():
    outer = ChunkMatch(0, 4, tuple("abcd"), 1)
    inner = ChunkMatch(1, 3, tuple("bc"), 1)
    left = ChunkMatch(0, 2, tuple("ab"), 1)
    right = ChunkMatch(2, 4, tuple("cd"), 1)

    contained = build_lattice("abcd", [outer, inner])
    abutting = build_lattice("abcd", [left, right])

    assert contained.arcs == []
    assert enumerate_paths(contained) == [[outer]]
    assert abutting.arcs == []
    assert enumerate_paths(abutting) == []


def test_arcs_carry_overlap(hope_lattice):
    overlaps = {(a.source.span, a.target.span): a.overlap for a in hope_lattice.arcs}

    assert overlaps[((0, 2), (1, 4))] == 1
    assert overlaps[((0, 3), (2, 4))] == 1
    assert all(a.source.start < a.target.start < a.source.end < a.target.end for a in hope_lattice.arcs)


def test_lattice_is_acyclic_and_ordered(hope_lattice):
    assert nx.is_directed_acyclic_graph(hope_lattice.graph)
    order = hope_lattice.topological_order()
    assert order == sorted(order, key=lambda m: (m.start, m.end, m.phonemic))


def test_no_suffix_match_means_no_path(hope_index):
    lattice = build_lattice("hox", hope_index.match_word("hox"), "smpa")

    assert not lattice.has_path()
    assert enumerate_paths(lattice) == []


def test_empty_matches_give_empty_lattice():
    lattice = build_lattice("zzzz", [])

    assert lattice.nodes == []
    assert enumerate_paths(lattice) == []


def test_match_outside_word_is_rejected():
    with pytest.raises(ValueError):
        build_lattice("ab", [ChunkMatch(1, 3, ("x", "y"), 1)])


def test_path_limit(hope_lattice):
    assert len(enumerate_paths(hope_lattice, limit=2)) == 2
    with pytest.raises(ValueError):
        enumerate_paths(hope_lattice, limit=0)


def test_merge_detects_inconsistent_paths():
    with pytest.raises(LatticeConsistencyError, match="disagree"):
        merge_path_phonemes("abc", [ChunkMatch(0, 2, ("x", "y"), 1), ChunkMatch(1, 3, ("z", "w"), 1)])
    with pytest.raises(LatticeConsistencyError, match="cover"):
        merge_path_phonemes("abcd", [ChunkMatch(0, 2, ("x", "y"), 1)])


def test_headtail_paths(hope_index):
    lattice = build_lattice("hope", hope_index.match_word("hope"), "headtail")

    paths = {_spell("hope", p) for p in enumerate_paths(lattice)}

    assert paths == {
        ((0, 2, "hO"), (1, 4, "Op-")),
        ((0, 3, "-@p"), (2, 4, "p-")),
    }


def test_headtail_excludes_whole_word_path(hope_index):
    lattice = build_lattice("slope", hope_index.match_word("slope"), "headtail")

    assert all(len(path) == 2 for path in enumerate_paths(lattice))


def test_mode_alias_resolves(hope_index):
    lattice = build_lattice("hope", hope_index.match_word("hope"), "OVERLAP1")

    assert lattice.mode.name == "pronounce"


@pytest.mark.parametrize("seed", range(25))
def test_overlap1_arcs_are_a_subset_of_smpa_arcs(seed):
    rng = random.Random(seed)
    lines = []
    for _ in range(8):
        word = "".join(rng.choice("abc") for _ in range(rng.randint(2, 6)))
        lines.append(f"{word}\t{''.join(rng.choice('xy-') for _ in word)}")
    index = build_index(parse_lexicon(lines))
    word = "".join(rng.choice("abc") for _ in range(rng.randint(3, 8)))
    matches = index.match_word(word)

    smpa = build_lattice(word, matches, "smpa")
    overlap1 = build_lattice(word, matches, "pronounce")
    headtail = build_lattice(word, matches, "headtail")

    smpa_arcs = set(smpa.arcs)
    assert set(overlap1.arcs) <= smpa_arcs
    assert set(headtail.arcs) <= smpa_arcs
    assert all(arc.overlap == 1 for arc in overlap1.arcs)


def test_arc_checks_stay_within_node_pairs(hope_index):
    counter = OperationCounter()
    matches = hope_index.match_word("hope")

    build_lattice("hope", matches, counter=counter)

    assert 0 < counter["arc_checks"] <= len(matches) * (len(matches) - 1) // 2


def test_node_label():
    assert node_label("hope", ChunkMatch(1, 4, ("O", "p", "-"), 1)) == "ope[1,4)/Op-"
    assert node_label("chat", ChunkMatch(0, 2, ("tS", "a"), 1)) == "ch[0,2)/tS a"


def test_export_dot(hope_lattice):
    dot = export_dot(hope_lattice)

    assert dot.startswith('digraph "hope" {')
    assert dot.rstrip().endswith("}")
    assert "rankdir=LR" in dot
    assert 'label="ope[1,4)/Op-"' in dot
    assert "S [shape=circle" in dot
    assert "E [shape=doublecircle" in dot
    assert dot.count("->") == hope_lattice.graph.number_of_edges()
    assert export_dot(hope_lattice) == dot
