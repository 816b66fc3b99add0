"""
Bi-colored multigraph model, perfect-matching checks and the explicit-coloring solver.

Module contents:
    - BiColoredEdge / Graph: immutable graph model (1-based vertices, 0-based edge ids).
    - parse_graph / serialize_graph: the JSON graph format, both ways.
    - check_perfect_matching: vertex-disjointness and coverage test for an edge set.
    - inherited_coloring: the vertex coloring a perfect matching induces.
    - count_vector: per-color counts of a vertex coloring.
    - edge_subgraph_by_coloring: edges whose endpoint colors agree with a coloring.
    - blossom_has_pm / blossom_matching: uncolored perfect matchings via Edmonds' algorithm.
    - solve_explicit / find_explicit_matching: decides the problem for an explicit
      list of allowed colorings.

Created on 14-10-26
"""

import json
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .errors import DimensionError, InputFormatError, NotAPerfectMatchingError

logger = logging.getLogger(__name__)

VertexColoring = tuple[int, ...]
PerfectMatching = frozenset[int]
CountVector = tuple[int, ...]


@dataclass(frozen=True)
class BiColoredEdge:
    """Edge {(u, color_at_u), (v, color_at_v)}."""

    u: int
    v: int
    color_at_u: int
    color_at_v: int

    @property
    def is_monochromatic(self) -> bool:
        return self.color_at_u == self.color_at_v

    def color_at(self, vertex: int) -> int:
        if vertex == self.u:
            return self.color_at_u
        if vertex == self.v:
            return self.color_at_v
        raise ValueError(f"vertex {vertex} is not an endpoint of {self}")

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u

    def as_list(self) -> list[int]:
        return [self.u, self.v, self.color_at_u, self.color_at_v]


@dataclass(frozen=True)
class Graph:
    """
    Bi-colored multigraph (V, E, d).

    Vertices are 1..n, colors are 1..d, and an edge id is the edge's
    position in `edges`. Parallel edges are kept as distinct edges.
    """

    n: int
    d: int
    edges: tuple[BiColoredEdge, ...] = ()

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise InputFormatError(f"vertex count must be a non-negative integer, got {self.n!r}")
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise InputFormatError(f"color count must be a positive integer, got {self.d!r}")
        for index, edge in enumerate(self.edges):
            _check_edge(edge, self.n, self.d, index)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def incident(self, vertex: int) -> list[int]:
        """Edge ids touching `vertex`, ascending."""
        return [i for i, e in enumerate(self.edges) if vertex in (e.u, e.v)]

    def simple_pairs(self) -> list[tuple[int, int]]:
        """Distinct vertex pairs (lo, hi) carrying at least one edge, sorted."""
        return sorted({(min(e.u, e.v), max(e.u, e.v)) for e in self.edges})

    def edges_between(self, u: int, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if {e.u, e.v} == {u, v}]


def _check_edge(edge: BiColoredEdge, n: int, d: int, index: int) -> None:
    for value in (edge.u, edge.v, edge.color_at_u, edge.color_at_v):
        if isinstance(value, bool) or not isinstance(value, int):
            raise InputFormatError(f"non-integer field {value!r}", index)
    if edge.u == edge.v:
        raise InputFormatError("self-loop", index)
    if not (1 <= edge.u <= n and 1 <= edge.v <= n):
        raise InputFormatError(f"endpoint out of range 1..{n}", index)
    if not (1 <= edge.color_at_u <= d and 1 <= edge.color_at_v <= d):
        raise InputFormatError(f"color out of range 1..{d}", index)


# ============================================================================
# SERIALIZATION
# ============================================================================


def parse_graph(text) -> Graph:
    """
    Parse the JSON graph format.

    Args:
        text: str or bytes holding {"n": int, "d": int, "edges": [[u, v, cu, cv], ...]}.

    Returns:
        Graph: validated graph, edge ids in input order.

    Raises:
        InputFormatError: malformed JSON, missing keys, self-loops or values out
            of range. Edge problems carry the offending edge index.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"malformed graph JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("graph document must be a JSON object")
    missing = {"n", "d", "edges"} - doc.keys()
    if missing:
        raise InputFormatError(f"graph document lacks {sorted(missing)}")
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise InputFormatError("'edges' must be a list")

    edges = []
    for index, raw in enumerate(raw_edges):
        if not isinstance(raw, list) or len(raw) != 4:
            raise InputFormatError("expected [u, v, color_at_u, color_at_v]", index)
        edges.append(BiColoredEdge(*raw))
    return Graph(doc["n"], doc["d"], tuple(edges))


def graph_to_json(g: Graph) -> dict:
    return {"d": g.d, "edges": [e.as_list() for e in g.edges], "n": g.n}


def serialize_graph(g: Graph) -> str:
    """Canonical single-line JSON (sorted keys, edges in id order)."""
    return json.dumps(graph_to_json(g), sort_keys=True, separators=(",", ":"))


# ============================================================================
# MATCHINGS AND COLORINGS
# ============================================================================


def _check_edge_ids(g: Graph, edge_ids: Iterable[int]) -> list[int]:
    ids = list(edge_ids)
    for i in ids:
        if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(g.edges):
            raise InputFormatError(f"invalid edge id {i!r}")
    return ids


def check_perfect_matching(g: Graph, edge_ids: Iterable[int]) -> bool:
    """True iff the edges are pairwise vertex-disjoint and cover every vertex."""
    ids = _check_edge_ids(g, edge_ids)
    if len(set(ids)) != len(ids):
        return False
    covered = set()
    for i in ids:
        e = g.edges[i]
        if e.u in covered or e.v in covered:
            return False
        covered.update((e.u, e.v))
    return len(covered) == g.n


def inherited_coloring(g: Graph, p: Iterable[int]) -> VertexColoring:
    """
    Coloring in which each vertex takes the color its matched edge gives it.

    Raises:
        NotAPerfectMatchingError: if `p` is not a perfect matching of `g`.
    """
    ids = list(p)
    if not check_perfect_matching(g, ids):
        raise NotAPerfectMatchingError(f"edges {sorted(ids)} are not a perfect matching")
    colors = [0] * g.n
    for i in ids:
        e = g.edges[i]
        colors[e.u - 1] = e.color_at_u
        colors[e.v - 1] = e.color_at_v
    return tuple(colors)


def count_vector(coloring: Sequence[int], d: int) -> CountVector:
    counts = [0] * d
    for color in coloring:
        if not 1 <= color <= d:
            raise DimensionError(f"color {color} outside 1..{d}")
        counts[color - 1] += 1
    return tuple(counts)


def edge_subgraph_by_coloring(g: Graph, coloring: Sequence[int]) -> list[int]:
    """Ids of edges whose colors at both endpoints agree with `coloring`."""
    if len(coloring) != g.n:
        raise DimensionError(f"coloring has {len(coloring)} entries for {g.n} vertices")
    return [
        i
        for i, e in enumerate(g.edges)
        if coloring[e.u - 1] == e.color_at_u and coloring[e.v - 1] == e.color_at_v
    ]


# ============================================================================
# UNCOLORED MATCHING (BLOSSOM)
# ============================================================================


def blossom_matching(g: Graph, edge_ids: Iterable[int] | None = None) -> PerfectMatching | None:
    """
    Perfect matching of the uncolored graph, or None when there is none.

    Parallel edges are collapsed before running networkx's maximum
    cardinality matching; each matched pair is mapped back to its lowest
    edge id among `edge_ids` (all edges by default).
    """
    ids = range(len(g.edges)) if edge_ids is None else sorted(edge_ids)
    if g.n % 2:
        return None
    if g.n == 0:
        return frozenset()

    lowest = {}
    for i in ids:
        e = g.edges[i]
        lowest.setdefault(frozenset((e.u, e.v)), i)

    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from(tuple(pair) for pair in lowest)
    matching = nx.max_weight_matching(simple, maxcardinality=True)
    if 2 * len(matching) != g.n:
        return None
    return frozenset(lowest[frozenset(pair)] for pair in matching)


def blossom_has_pm(g: Graph) -> bool:
    return blossom_matching(g) is not None


# ============================================================================
# EXPLICIT COLORING LISTS
# ============================================================================


def find_explicit_matching(g: Graph, colorings: Iterable[Sequence[int]]) -> PerfectMatching | None:
    """
    First perfect matching whose inherited coloring is on the list.

    Steps:
        1. For each coloring c, keep only the edges agreeing with c at both ends.
        2. Ask blossom for an uncolored perfect matching of that subgraph.
        3. Any such matching inherits exactly c, so the first hit is returned.

    Raises:
        DimensionError: some coloring's length differs from n, whether or
            not an earlier coloring already admits a matching.
    """
    colorings = [tuple(c) for c in colorings]
    for index, coloring in enumerate(colorings):
        if len(coloring) != g.n:
            raise DimensionError(f"coloring {index} has {len(coloring)} entries for {g.n} vertices")
    for index, coloring in enumerate(colorings):
        agreeing = edge_subgraph_by_coloring(g, coloring)
        matching = blossom_matching(g, agreeing)
        if matching is not None:
            logger.debug("✓ Coloring %d admits a perfect matching", index)
            return matching
    return None


def solve_explicit(g: Graph, colorings: Iterable[Sequence[int]]) -> bool:
    return find_explicit_matching(g, colorings) is not None
