"""Pronunciation lattices over chunk matches."""

from src.lattice.builder import (
    END,
    START,
    Lattice,
    LatticeArc,
    LatticePath,
    build_lattice,
    enumerate_paths,
    iter_paths,
    merge_path_phonemes,
)
from src.lattice.dot import export_dot, node_label

__all__ = [
    "END",
    "START",
    "Lattice",
    "LatticeArc",
    "LatticePath",
    "build_lattice",
    "enumerate_paths",
    "export_dot",
    "iter_paths",
    "merge_path_phonemes",
    "node_label",
]
