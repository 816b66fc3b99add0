"""
Polynomial reductions into the constrained matching problems.

Module contents:
    - CnfFormula / parse_dimacs / to_dimacs: 3-CNF formulas and the DIMACS format.
    - pad_clause: repeat the last literal until a clause has three.
    - evaluate_cnf / brute_sat: truth-table ground truth.
    - GadgetMap: where each clause's six gadget vertices live.
    - sat3_to_dd: 3-SAT to a bipartite mono-colored graph plus an All-Equal diagram.
    - decode_assignment / encode_assignment: matchings <-> satisfying assignments.
    - xpm_to_sym / xpm_brute: exact perfect matching with k red edges.

Created on 17-10-26
"""

import json
import logging
from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .config import BLUE, RED, TRUTH_TABLE_VARIABLE_LIMIT
from .constraints import CountEq
from .decision_diagrams import DecisionDiagram, dd_all_equal, dd_conjoin_disjoint, dd_constant
from .errors import DimensionError, IllegalMatchingError, InputFormatError, ResourceLimitError
from .graph_core import BiColoredEdge, Graph, PerfectMatching, inherited_coloring
from .brute_oracle import enumerate_pms

logger = logging.getLogger(__name__)

Assignment = dict[int, bool]


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for index, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise InputFormatError(f"expected 3 literals, got {len(clause)}", index, "clause")
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise InputFormatError(f"literal {literal} out of range", index, "clause")


def pad_clause(literals) -> tuple[int, int, int]:
    literals = tuple(literals)
    if not 1 <= len(literals) <= 3:
        raise InputFormatError(f"clause with {len(literals)} literals is not 3-CNF")
    return literals + (literals[-1],) * (3 - len(literals))


def parse_dimacs(text) -> CnfFormula:
    """
    Parse a DIMACS CNF document.

    Comment lines start with 'c'; the header is 'p cnf <vars> <clauses>';
    clauses are zero-terminated and may span lines. Clauses shorter than
    three literals are padded.

    Raises:
        InputFormatError: missing header, wrong clause count, empty or
            over-long clauses, or an unterminated final clause.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    num_vars = declared = None
    clauses, current = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise InputFormatError(f"bad problem line {line!r}")
            num_vars, declared = int(fields[2]), int(fields[3])
            continue
        if num_vars is None:
            raise InputFormatError("clause before the 'p cnf' header")
        for token in line.split():
            try:
                literal = int(token)
            except ValueError as exc:
                raise InputFormatError(f"bad literal {token!r}", len(clauses), "clause") from exc
            if literal == 0:
                if not current:
                    raise InputFormatError("empty clause", len(clauses), "clause")
                if len(current) > 3:
                    raise InputFormatError("more than 3 literals", len(clauses), "clause")
                clauses.append(pad_clause(current))
                current = []
            else:
                current.append(literal)
    if num_vars is None:
        raise InputFormatError("missing 'p cnf' header")
    if current:
        raise InputFormatError("last clause is not terminated by 0", len(clauses), "clause")
    if declared != len(clauses):
        raise InputFormatError(f"header declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in f.clauses]
    return "\n".join(lines) + "\n"


def evaluate_cnf(f: CnfFormula, assignment: Mapping[int, bool]) -> bool:
    return all(
        any(assignment.get(abs(lit), False) == (lit > 0) for lit in clause) for clause in f.clauses
    )


def brute_sat(f: CnfFormula, limit: int = TRUTH_TABLE_VARIABLE_LIMIT) -> Assignment | None:
    """First satisfying assignment in truth-table order, or None."""
    if f.num_vars > limit:
        raise ResourceLimitError(f"{f.num_vars} variables exceed the truth-table limit of {limit}")
    for values in product((False, True), repeat=f.num_vars):
        assignment = dict(enumerate(values, start=1))
        if evaluate_cnf(f, assignment):
            return assignment
    return None


# ============================================================================
# 3-SAT GADGETS
# ============================================================================


@dataclass(frozen=True)
class GadgetMap:
    """Per clause i: u_i, (v_i1, v_i2, v_i3), (w_i1, w_i2); per variable x: V^x."""

    clause_vertices: tuple[int, ...]
    literal_vertices: tuple[tuple[int, int, int], ...]
    dummy_vertices: tuple[tuple[int, int], ...]
    variable_classes: dict[int, tuple[int, ...]]

    def to_json(self) -> str:
        doc = {
            "clause_vertices": list(self.clause_vertices),
            "literal_vertices": [list(v) for v in self.literal_vertices],
            "dummy_vertices": [list(w) for w in self.dummy_vertices],
            "variable_classes": {str(x): list(vs) for x, vs in sorted(self.variable_classes.items())},
        }
        return json.dumps(doc, separators=(",", ":"))


def sat3_to_dd(f: CnfFormula) -> tuple[Graph, DecisionDiagram, GadgetMap]:
    """
    Reduce 3-SAT to the decision-diagram variant.

    Steps:
        1. Clause i gets vertices u = 6i+1, v_k = 6i+2..6i+4, w = 6i+5, 6i+6.
        2. u is joined to v_k by a mono red edge for a positive literal and a
           mono blue edge for a negative one.
        3. Each dummy w is joined to every v_k by one red and one blue edge.
        4. V^x collects the literal vertices of variable x; the diagram is the
           conjunction of All-Equal diagrams over the V^x, variables ascending.

    Returns:
        tuple: (graph with 6m vertices, diagram, gadget map).
    """
    edges = []
    clause_vertices, literal_vertices, dummy_vertices = [], [], []
    classes: dict[int, list[int]] = {}
    for i, clause in enumerate(f.clauses):
        base = 6 * i
        u, vs, ws = base + 1, (base + 2, base + 3, base + 4), (base + 5, base + 6)
        clause_vertices.append(u)
        literal_vertices.append(vs)
        dummy_vertices.append(ws)
        for literal, v in zip(clause, vs):
            color = RED if literal > 0 else BLUE
            edges.append(BiColoredEdge(u, v, color, color))
            classes.setdefault(abs(literal), []).append(v)
        for w in ws:
            for v in vs:
                edges.append(BiColoredEdge(w, v, RED, RED))
                edges.append(BiColoredEdge(w, v, BLUE, BLUE))

    g = Graph(6 * len(f.clauses), 2, tuple(edges))
    variables = sorted(classes)
    order = tuple(v for x in variables for v in classes[x])
    dd = dd_constant(True, 2)
    for x in variables:
        dd = dd_conjoin_disjoint(dd, dd_all_equal(classes[x], 2, order))
    gmap = GadgetMap(
        tuple(clause_vertices),
        tuple(literal_vertices),
        tuple(dummy_vertices),
        {x: tuple(classes[x]) for x in variables},
    )
    logger.info("✓ Reduced %d clauses to %d vertices, %d edges", len(f.clauses), g.n, len(g.edges))
    return g, dd, gmap


def decode_assignment(p, gmap: GadgetMap, g: Graph) -> Assignment:
    """
    Read a truth assignment off a legal matching: x is True iff V^x is red.

    Raises:
        IllegalMatchingError: some V^x carries two colors.
    """
    coloring = inherited_coloring(g, p)
    assignment = {}
    for x, vertices in gmap.variable_classes.items():
        colors = {coloring[v - 1] for v in vertices}
        if len(colors) != 1:
            raise IllegalMatchingError(f"variable {x} has mixed colors on {list(vertices)}")
        assignment[x] = colors == {RED}
    return assignment


def _edge_id(g: Graph, a: int, b: int, color: int) -> int:
    for edge_id, e in enumerate(g.edges):
        if {e.u, e.v} == {a, b} and e.color_at_u == color:
            return edge_id
    raise KeyError((a, b, color))


def encode_assignment(f: CnfFormula, assignment: Mapping[int, bool], gmap: GadgetMap, g: Graph) -> PerfectMatching:
    """
    Matching built from a satisfying assignment.

    u_i takes the first satisfied literal's vertex; the other two literal
    vertices go to w_i1 and w_i2 through the edge of their variable's color.

    Raises:
        ValueError: the assignment leaves a clause unsatisfied.
    """
    chosen = []
    for i, clause in enumerate(f.clauses):
        satisfied = [k for k, lit in enumerate(clause) if assignment.get(abs(lit), False) == (lit > 0)]
        if not satisfied:
            raise ValueError(f"clause {i} is not satisfied")
        first = satisfied[0]
        vs = gmap.literal_vertices[i]
        literal = clause[first]
        chosen.append(_edge_id(g, gmap.clause_vertices[i], vs[first], RED if literal > 0 else BLUE))
        rest = [k for k in range(3) if k != first]
        for w, k in zip(gmap.dummy_vertices[i], rest):
            color = RED if assignment.get(abs(clause[k]), False) else BLUE
            chosen.append(_edge_id(g, w, vs[k], color))
    return frozenset(chosen)


# ============================================================================
# EXACT PERFECT MATCHING
# ============================================================================


def _check_red_blue(g: Graph) -> None:
    if g.d != 2:
        raise DimensionError(f"exact matching needs d = 2, got d = {g.d}")
    for index, e in enumerate(g.edges):
        if not e.is_monochromatic:
            raise InputFormatError("edge is not monochromatic", index)


def xpm_to_sym(g: Graph, k: int):
    """Exact matching with k red edges as the constraint 'exactly 2k red vertices'."""
    _check_red_blue(g)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return g, CountEq(RED, 2 * k)


def xpm_brute(g: Graph, k: int) -> bool:
    """Direct count of red edges in every perfect matching."""
    _check_red_blue(g)
    return any(
        sum(1 for i in matching if g.edges[i].color_at_u == RED) == k for matching, _ in enumerate_pms(g)
    )
