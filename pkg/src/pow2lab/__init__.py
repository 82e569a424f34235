"""Integer labellings of graphs whose edge sums are powers of two."""

from .admissibility import Verdict, distinctify, f_value, graph_solve, is_admissible, verify_labeling
from .graphs import Graph, parse_graph6, write_graph6
from .powersolve import PowerSystem, SolutionMap, solve_in_powers
from .search import GTable, MfsSet, compute_g, extend_search, find_mfs, g_upper_bound, maximal_admissible, min_degree_bound

__version__ = "0.1.0"

__all__ = [
    "GTable",
    "Graph",
    "MfsSet",
    "PowerSystem",
    "SolutionMap",
    "Verdict",
    "compute_g",
    "distinctify",
    "extend_search",
    "f_value",
    "find_mfs",
    "g_upper_bound",
    "graph_solve",
    "is_admissible",
    "maximal_admissible",
    "min_degree_bound",
    "parse_graph6",
    "solve_in_powers",
    "verify_labeling",
    "write_graph6",
]
