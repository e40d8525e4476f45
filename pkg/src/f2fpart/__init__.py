"""Partitions of planar graphs without 4- and 6-cycles into a linear forest
and a forest, with an exact solver, a reduction-based constructor and a
discharging audit."""

from .constructor import construct
from .corpus import Family, default_corpus, gen
from .discharging import audit, final_charges
from .graph import Embedding, Graph, build_embedding, build_graph, in_class
from .partition import F, F1, F2, F2_F, I, ClassSpec, Partition, normalize, verify
from .solver import Outcome, SolveResult, solve
from .structure import configurations, find_reducible

__all__ = [
    "ClassSpec", "Embedding", "F", "F1", "F2", "F2_F", "Family", "Graph", "I", "Outcome",
    "Partition", "SolveResult", "audit", "build_embedding", "build_graph", "configurations",
    "construct", "default_corpus", "final_charges", "find_reducible", "gen", "in_class",
    "normalize", "solve", "verify",
]
