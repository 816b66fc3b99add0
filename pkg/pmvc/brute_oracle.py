"""
Exhaustive ground truth for small instances.

Module contents:
    - enumerate_pms: every perfect matching with its inherited coloring.
    - oracle_sym / oracle_dd / oracle_explicit: exact decisions with witnesses.
    - brute_max_matching_size: exhaustive maximum matching size.
    - naive_det: cofactor-expansion determinant of a polynomial matrix.
"""

import logging
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .config import NAIVE_DET_LIMIT, ORACLE_VERTEX_LIMIT
from .constraints import Constraint, check_dimension
from .decision_diagrams import DecisionDiagram, dd_evaluate
from .errors import ResourceLimitError
from .graph_core import Graph, PerfectMatching, VertexColoring, count_vector, inherited_coloring
from .polynomials import PolyMatrix

logger = logging.getLogger(__name__)


class OracleAnswer(NamedTuple):
    found: bool
    matching: PerfectMatching | None = None
    coloring: VertexColoring | None = None

    def __bool__(self):
        return self.found


def _check_limit(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise ResourceLimitError(f"{g.n} vertices exceed the enumeration limit of {limit}")


def enumerate_pms(g: Graph, limit: int = ORACLE_VERTEX_LIMIT) -> list[tuple[PerfectMatching, VertexColoring]]:
    """
    All perfect matchings of g, each with its inherited coloring.

    Branches on the smallest uncovered vertex over its incident edges; the
    result is sorted lexicographically by sorted edge ids. n = 0 yields the
    single empty matching.

    Raises:
        ResourceLimitError: n exceeds `limit`.
    """
    _check_limit(g, limit)
    incident = {v: g.incident(v) for v in g.vertices}
    found = []

    def extend(covered: frozenset, chosen: list[int]) -> None:
        free = next((v for v in g.vertices if v not in covered), None)
        if free is None:
            found.append(tuple(sorted(chosen)))
            return
        for edge_id in incident[free]:
            other = g.edges[edge_id].other(free)
            if other not in covered:
                chosen.append(edge_id)
                extend(covered | {free, other}, chosen)
                chosen.pop()

    if g.n % 2 == 0:
        extend(frozenset(), [])
    found.sort()
    return [(frozenset(ids), inherited_coloring(g, ids)) for ids in found]


def oracle_explicit(g: Graph, colorings: Iterable[Sequence[int]], limit: int = ORACLE_VERTEX_LIMIT) -> OracleAnswer:
    allowed = {tuple(c) for c in colorings}
    for matching, coloring in enumerate_pms(g, limit):
        if coloring in allowed:
            return OracleAnswer(True, matching, coloring)
    return OracleAnswer(False)


def oracle_sym(g: Graph, constraint: Constraint, limit: int = ORACLE_VERTEX_LIMIT) -> OracleAnswer:
    """First perfect matching (in enumeration order) with a legal count vector."""
    check_dimension(constraint, g.d)
    for matching, coloring in enumerate_pms(g, limit):
        if constraint.holds(count_vector(coloring, g.d)):
            return OracleAnswer(True, matching, coloring)
    return OracleAnswer(False)


def oracle_dd(g: Graph, dd: DecisionDiagram, limit: int = ORACLE_VERTEX_LIMIT) -> OracleAnswer:
    """First perfect matching whose inherited coloring the diagram accepts."""
    for matching, coloring in enumerate_pms(g, limit):
        if dd_evaluate(dd, coloring):
            return OracleAnswer(True, matching, coloring)
    return OracleAnswer(False)


def brute_max_matching_size(g: Graph, limit: int = ORACLE_VERTEX_LIMIT) -> int:
    """Size of a maximum matching, by memoized search over vertex subsets."""
    _check_limit(g, limit)
    neighbours = {v: {e.other(v) for e in g.edges if v in (e.u, e.v)} for v in g.vertices}

    @lru_cache(maxsize=None)
    def best(remaining: frozenset) -> int:
        if not remaining:
            return 0
        v = min(remaining)
        rest = remaining - {v}
        size = best(rest)
        for u in neighbours[v] & rest:
            size = max(size, 1 + best(rest - {u}))
        return size

    return best(frozenset(g.vertices))


def naive_det(m: PolyMatrix, limit: int = NAIVE_DET_LIMIT):
    """
    Determinant by cofactor expansion along the first row.

    Raises:
        ResourceLimitError: the matrix is larger than `limit`.
    """
    if m.size > limit:
        raise ResourceLimitError(f"{m.size}x{m.size} matrix exceeds the cofactor limit of {limit}")
    if m.size == 0:
        return m.ring.one

    total = m.ring.zero
    for j in range(m.size):
        entry = m[0, j]
        if entry:
            term = entry * naive_det(m.minor(0, j), limit)
            total += term if j % 2 == 0 else -term
    return total
