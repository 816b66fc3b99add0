"""
Exact dynamic program over a nice tree decomposition.

A state at node X is (c, b): c gives every bag vertex a color, or 0 when
the vertex is not matched yet inside tree(X), and b counts the colors of all
vertices matched inside tree(X). Only reachable states are stored, each with
the first predecessor that produced it, so a witness matching can be rebuilt.

Module contents:
    - DPResult: answer, optional witness and table size.
    - dp_solve_sym: runs the table bottom-up, accepts at the root and
      reconstructs a re-verified witness.
    - solve_with_heuristic: heuristic decomposition, nice conversion, then dp_solve_sym.

Created on 17-10-26
"""

import logging
from collections import defaultdict
from typing import NamedTuple

from .constraints import Constraint, check_dimension
from .errors import InvalidDecompositionError
from .graph_core import Graph, PerfectMatching, check_perfect_matching, count_vector, inherited_coloring
from .tree_decomposition import NiceTreeDecomposition, NodeKind, check_nice, heuristic_td, make_nice, validate_td

logger = logging.getLogger(__name__)

State = tuple[tuple[int, ...], tuple[int, ...]]


class DPResult(NamedTuple):
    answer: bool
    matching: PerfectMatching | None = None
    table_size: int = 0

    def __bool__(self):
        return self.answer


def _edge_lookup(g: Graph) -> dict[tuple[int, int], dict[tuple[int, int], int]]:
    """(u, v) -> {(color at u, color at v): lowest edge id}."""
    lookup: dict[tuple[int, int], dict[tuple[int, int], int]] = defaultdict(dict)
    for edge_id, e in enumerate(g.edges):
        lookup[(e.u, e.v)].setdefault((e.color_at_u, e.color_at_v), edge_id)
        lookup[(e.v, e.u)].setdefault((e.color_at_v, e.color_at_u), edge_id)
    return lookup


def _bump(b: tuple[int, ...], *colors: int) -> tuple[int, ...]:
    counts = list(b)
    for color in colors:
        counts[color - 1] += 1
    return tuple(counts)


def _validate(g: Graph, ntd: NiceTreeDecomposition) -> None:
    problems = check_nice(ntd)
    if problems:
        raise InvalidDecompositionError(problems[0])
    if g.n == 0:
        return
    check = validate_td(g, ntd.as_tree_decomposition())
    if not check.valid:
        raise InvalidDecompositionError(check.message)


def dp_solve_sym(g: Graph, constraint: Constraint, ntd: NiceTreeDecomposition) -> DPResult:
    """
    Decide the symmetric-constraint problem exactly.

    Steps:
        1. Leaf(v): the single state c(v) = 0 with empty counts.
        2. Introduce(v): either v stays unmatched, or v is matched to a bag
           vertex u still unmatched in the child through an edge with colors
           (c(u), c(v)), adding both colors to b.
        3. Forget(v): keep child states where v is already matched.
        4. Join: combine one state from each child whose matched bag vertices
           are disjoint; c is their union and b the sum.
        5. Accept a root state with no zero in c, sum(b) = n and a legal b.

    Args:
        g: the graph.
        constraint: symmetric constraint over colors 1..d.
        ntd: nice tree decomposition of g.

    Returns:
        DPResult: the exact answer and, when yes, a witness that passed
        check_perfect_matching and the constraint.

    Raises:
        InvalidDecompositionError: ntd is not a nice decomposition of g.
        DimensionError: the constraint names a color beyond d.
    """
    check_dimension(constraint, g.d)
    _validate(g, ntd)
    zero = (0,) * g.d
    if g.n == 0:
        return DPResult(constraint.holds(zero), frozenset() if constraint.holds(zero) else None)
    if g.n % 2:
        return DPResult(False)

    lookup = _edge_lookup(g)
    tables: dict[int, dict[State, tuple]] = {}
    bag_order = {i: tuple(sorted(node.bag)) for i, node in ntd.nodes.items()}
    size = 0

    for node_id in ntd.postorder():
        node = ntd.nodes[node_id]
        order = bag_order[node_id]
        table: dict[State, tuple] = {}

        if node.kind is NodeKind.LEAF:
            table[((0,), zero)] = ("leaf",)

        elif node.kind is NodeKind.INTRODUCE:
            child_id = node.children[0]
            child_order = bag_order[child_id]
            at = order.index(node.vertex)
            for key in tables[child_id]:
                c, b = key
                unmatched = c[:at] + (0,) + c[at:]
                table.setdefault((unmatched, b), ("skip", child_id, key))
                for position, u in enumerate(child_order):
                    if c[position]:
                        continue
                    for (color_u, color_v), edge_id in sorted(lookup.get((u, node.vertex), {}).items()):
                        colors = list(unmatched)
                        colors[order.index(u)] = color_u
                        colors[at] = color_v
                        state = (tuple(colors), _bump(b, color_u, color_v))
                        table.setdefault(state, ("match", child_id, key, edge_id))

        elif node.kind is NodeKind.FORGET:
            child_id = node.children[0]
            at = bag_order[child_id].index(node.vertex)
            for key in tables[child_id]:
                c, b = key
                if c[at]:
                    table.setdefault((c[:at] + c[at + 1 :], b), ("forget", child_id, key))

        else:
            left_id, right_id = node.children
            right_by_mask = defaultdict(list)
            for key in tables[right_id]:
                mask = tuple(bool(x) for x in key[0])
                right_by_mask[mask].append(key)
            for left_key in tables[left_id]:
                left_c, left_b = left_key
                for mask, right_keys in right_by_mask.items():
                    if any(m and x for m, x in zip(mask, left_c)):
                        continue
                    for right_key in right_keys:
                        right_c, right_b = right_key
                        b = tuple(p + q for p, q in zip(left_b, right_b))
                        if sum(b) > g.n:
                            continue
                        c = tuple(p or q for p, q in zip(left_c, right_c))
                        table.setdefault((c, b), ("join", left_id, left_key, right_id, right_key))

        tables[node_id] = table
        size += len(table)

    accepted = sorted(
        key
        for key in tables[ntd.root]
        if all(key[0]) and sum(key[1]) == g.n and constraint.holds(key[1])
    )
    if not accepted:
        logger.info("No accepting root state (%d table entries)", size)
        return DPResult(False, table_size=size)

    matching = _reconstruct(tables, ntd.root, accepted[0])
    if not check_perfect_matching(g, matching) or not constraint.holds(
        count_vector(inherited_coloring(g, matching), g.d)
    ):
        raise RuntimeError(f"reconstructed witness {sorted(matching)} failed re-verification")
    logger.info("✓ Legal matching found (%d table entries)", size)
    return DPResult(True, matching, size)


def _reconstruct(tables, root: int, key: State) -> PerfectMatching:
    """Follow predecessor records down from an accepting root state."""
    matched = []
    stack = [(root, key)]
    while stack:
        node_id, state = stack.pop()
        record = tables[node_id][state]
        tag = record[0]
        if tag == "match":
            matched.append(record[3])
            stack.append((record[1], record[2]))
        elif tag in ("skip", "forget"):
            stack.append((record[1], record[2]))
        elif tag == "join":
            stack.append((record[1], record[2]))
            stack.append((record[3], record[4]))
    return frozenset(matched)


def solve_with_heuristic(g: Graph, constraint: Constraint) -> DPResult:
    """Min-degree decomposition, nice conversion, then the exact table."""
    return dp_solve_sym(g, constraint, make_nice(heuristic_td(g)))
