"""Graphviz DOT rendering of a pronunciation lattice."""

from src.chunk_index.index import ChunkMatch
from src.lattice.builder import END, START, Lattice


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def node_label(word: str, node: ChunkMatch) -> str:
    """``grapheme-span/phonemes`` label, e.g. ``ope[1,4)/Op-``."""
    separator = " " if any(len(p) > 1 for p in node.phonemic) else ""
    return f"{word[node.start:node.end]}[{node.start},{node.end})/{separator.join(node.phonemic)}"


def export_dot(lattice: Lattice) -> str:
    """Render ``lattice`` as a DOT digraph with a deterministic line order.

    Chunk nodes are labelled ``grapheme-span/phonemes`` and chunk arcs carry
    their overlap size; S and E arcs are unlabelled.
    """
    ids = {node: f"n{i}" for i, node in enumerate(lattice.nodes)}
    ids[START] = START
    ids[END] = END

    lines = [
        f'digraph "{_escape(lattice.word)}" {{',
        "  rankdir=LR;",
        "  node [shape=box, fontsize=10];",
        f'  {START} [shape=circle, label="{START}"];',
        f'  {END} [shape=doublecircle, label="{END}"];',
    ]
    for node in lattice.nodes:
        label = _escape(node_label(lattice.word, node))
        lines.append(f'  {ids[node]} [label="{label}", tooltip="freq={node.freq}"];')
    for source, target, data in lattice.graph.edges(data=True):
        if "overlap" in data:
            lines.append(f'  {ids[source]} -> {ids[target]} [label="{data["overlap"]}"];')
        else:
            lines.append(f"  {ids[source]} -> {ids[target]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
