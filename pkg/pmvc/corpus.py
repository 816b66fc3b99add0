"""
Seeded random instances for cross-checking solvers.

Module contents:
    - corpus_rng: generator for instance i of a corpus.
    - random_graph: bi-colored multigraph with optional parallel edges.
    - random_red_blue_graph: mono red/blue graph for exact-matching checks.
    - random_constraint: small DSL expression over count atoms.
    - random_coloring / random_cnf: colorings and 3-CNF formulas.
"""

import numpy as np

from .config import BLUE, CORPUS_STREAM, RED
from .constraints import And, Constraint, CountEq, CountGe, CountLe, Not, Or
from .graph_core import BiColoredEdge, Graph
from .reductions import CnfFormula


def corpus_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, CORPUS_STREAM, index])


def random_graph(
    rng: np.random.Generator,
    n: int,
    d: int,
    edge_prob: float = 0.5,
    bicolor_prob: float = 0.5,
    max_parallel: int = 2,
) -> Graph:
    """Each vertex pair gets 0..max_parallel edges with probability edge_prob."""
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() >= edge_prob:
                continue
            for _ in range(int(rng.integers(1, max_parallel + 1))):
                cu = int(rng.integers(1, d + 1))
                cv = int(rng.integers(1, d + 1)) if rng.random() < bicolor_prob else cu
                edges.append(BiColoredEdge(u, v, cu, cv))
    return Graph(n, d, tuple(edges))


def random_red_blue_graph(rng: np.random.Generator, n: int, edge_prob: float = 0.5) -> Graph:
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < edge_prob:
                color = RED if rng.random() < 0.5 else BLUE
                edges.append(BiColoredEdge(u, v, color, color))
    return Graph(n, 2, tuple(edges))


def random_constraint(rng: np.random.Generator, n: int, d: int, depth: int = 2) -> Constraint:
    """Random expression of count atoms under And / Or / Not, at most `depth` deep."""
    if depth == 0 or rng.random() < 0.4:
        atom = (CountEq, CountGe, CountLe)[int(rng.integers(0, 3))]
        return atom(int(rng.integers(1, d + 1)), int(rng.integers(0, n + 1)))
    choice = int(rng.integers(0, 3))
    if choice == 2:
        return Not(random_constraint(rng, n, d, depth - 1))
    args = tuple(random_constraint(rng, n, d, depth - 1) for _ in range(2))
    return And(args) if choice == 0 else Or(args)


def random_coloring(rng: np.random.Generator, n: int, d: int) -> tuple[int, ...]:
    return tuple(int(c) for c in rng.integers(1, d + 1, size=n))


def random_cnf(rng: np.random.Generator, num_vars: int, num_clauses: int) -> CnfFormula:
    clauses = []
    for _ in range(num_clauses):
        variables = rng.integers(1, num_vars + 1, size=3)
        signs = rng.choice([-1, 1], size=3)
        clauses.append(tuple(int(v) * int(s) for v, s in zip(variables, signs)))
    return CnfFormula(num_vars, tuple(clauses))
