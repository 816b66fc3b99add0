"""
pmvc: perfect matchings under vertex-color constraints
Exact, randomized-algebraic and treewidth solvers with a brute-force oracle
"""

from .algebraic_solver import PitConfig, TriStateAnswer, Verdict, extract_pm_sym, pit_decide_sym
from .brute_oracle import enumerate_pms, oracle_dd, oracle_sym
from .cli import run
from .constraints import And, CountEq, CountGe, CountLe, Not, Or, legal_count_vectors, legal_terms, sym_eval
from .graph_core import BiColoredEdge, Graph, check_perfect_matching, inherited_coloring, parse_graph, solve_explicit
from .pfaffian import pfaffian_orientation, planar_decide_sym
from .reductions import sat3_to_dd, xpm_to_sym
from .treewidth_dp import dp_solve_sym, solve_with_heuristic

__all__ = [
    "And",
    "BiColoredEdge",
    "CountEq",
    "CountGe",
    "CountLe",
    "Graph",
    "Not",
    "Or",
    "PitConfig",
    "TriStateAnswer",
    "Verdict",
    "check_perfect_matching",
    "dp_solve_sym",
    "enumerate_pms",
    "extract_pm_sym",
    "inherited_coloring",
    "legal_count_vectors",
    "legal_terms",
    "oracle_dd",
    "oracle_sym",
    "parse_graph",
    "pfaffian_orientation",
    "pit_decide_sym",
    "planar_decide_sym",
    "run",
    "sat3_to_dd",
    "solve_explicit",
    "solve_with_heuristic",
    "sym_eval",
    "xpm_to_sym",
]
