"""Exact minor and subdivision containment, regular gadget families and tangle calculus for small graphs."""

from .errors import BudgetExceeded, HypothesisViolation
from .graph import Graph, edge_connectivity, vertex_connectivity
from .graph6 import emit_graph6, parse_graph6

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Graph",
    "HypothesisViolation",
    "__version__",
    "edge_connectivity",
    "emit_graph6",
    "parse_graph6",
    "vertex_connectivity",
]
