"""Nilpotent finite dynamical systems on signed digraphs.

A system ``f: A^n -> A^n`` is nilpotent when some iterate is constant; its
class is the least such iterate. The package builds signed digraphs, analyses
systems exhaustively, constructs nilpotent systems with a prescribed
interaction graph, and searches tiny instances by brute force.
"""

from .digraph import NEG, NULL, POS, SignedDigraph
from .dynamics import FDS, Alphabet, DynamicsReport, FiniteDynamicalSystem, analyze, interaction_graph, is_G_function

__all__ = [
    "Alphabet",
    "DynamicsReport",
    "FDS",
    "FiniteDynamicalSystem",
    "NEG",
    "NULL",
    "POS",
    "SignedDigraph",
    "analyze",
    "interaction_graph",
    "is_G_function",
]
