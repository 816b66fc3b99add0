"""
Ordered multivalued decision diagrams over vertex colors.

A node tests one vertex and branches on its color (d children, child i for
color i). Terminals are the strings "T" and "F". Vertices that do not appear
on the path taken are unconstrained.

Diagrams are built and evaluated as Boolean functions in a shared BDD from
the dd package. The color of a vertex is a block of bit variables holding
color - 1 in binary; the explicit node table is read back out of the BDD by
cofactoring one tested vertex at a time.

Module contents:
    - DDNode / DecisionDiagram: the diagram model.
    - ColorEncoding / color_encoding: vertex colors as BDD variables.
    - dd_function: the BDD function of a node table.
    - dd_validate: arity, reference and ordering checks.
    - dd_evaluate: value of the diagram under a vertex coloring.
    - dd_constant / dd_all_equal / dd_from_symmetric: constructors.
    - dd_conjoin_disjoint: conjunction of diagrams over disjoint vertex sets.
    - dd_size: node count including both terminals.
    - parse_dd / dd_to_json: JSON format both ways.

Created on 14-10-26
"""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from dd import autoref as _bdd

from .constraints import Constraint, check_dimension
from .errors import DiagramError, DimensionError, InputFormatError

logger = logging.getLogger(__name__)

TRUE_TERMINAL = "T"
FALSE_TERMINAL = "F"
TERMINALS = (TRUE_TERMINAL, FALSE_TERMINAL)

NodeRef = int | str


@dataclass(frozen=True)
class DDNode:
    vertex: int
    children: tuple[NodeRef, ...]


@dataclass(frozen=True)
class DecisionDiagram:
    order: tuple[int, ...]
    root: NodeRef
    nodes: dict[int, DDNode] = field(default_factory=dict)
    function_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def vertices(self) -> set[int]:
        """Vertices tested by some node."""
        return {node.vertex for node in self.nodes.values()}

    def arity(self) -> int:
        """Children per node; 2 for a diagram without nodes."""
        return len(next(iter(self.nodes.values())).children) if self.nodes else 2


def dd_size(dd: DecisionDiagram) -> int:
    return len(dd.nodes) + len(TERMINALS)


def dd_constant(value: bool, d: int = 2) -> DecisionDiagram:
    del d  # a constant diagram has no branching node
    return DecisionDiagram(order=(), root=TRUE_TERMINAL if value else FALSE_TERMINAL)


# ============================================================================
# COLOR ENCODING
# ============================================================================


class ColorEncoding:
    """
    Colors 1..d of every vertex as bit variables of one BDD manager.

    Vertex v owns variables c{v}_0 .. c{v}_{width-1}; bit j of color - 1 is
    the value of c{v}_j. Codes of d or more never occur in a coloring.
    """

    def __init__(self, d: int):
        if d < 1:
            raise DimensionError(f"number of colors must be at least 1, got {d}")
        self.d = d
        self.width = max(1, (d - 1).bit_length())
        self.bdd = _bdd.BDD()

    def bits(self, vertex: int) -> list[str]:
        names = [f"c{vertex}_{j}" for j in range(self.width)]
        missing = [name for name in names if name not in self.bdd.vars]
        if missing:
            self.bdd.declare(*missing)
        return names

    def assignment(self, vertex: int, color: int) -> dict[str, bool]:
        code = color - 1
        return {name: bool(code >> j & 1) for j, name in enumerate(self.bits(vertex))}

    def equals(self, vertex: int, color: int):
        """Function true exactly when `vertex` has `color`."""
        u = self.bdd.true
        for name, value in self.assignment(vertex, color).items():
            u &= self.bdd.var(name) if value else ~self.bdd.var(name)
        return u

    def cofactor(self, u, vertex: int, color: int):
        return self.bdd.let(self.assignment(vertex, color), u)


@lru_cache(maxsize=None)
def color_encoding(d: int) -> ColorEncoding:
    """Shared encoding per number of colors, so functions of equal arity combine."""
    return ColorEncoding(d)


def dd_function(dd: DecisionDiagram):
    """
    BDD function of a node table, cached on the diagram.

    A node testing v with children r1..rd is the disjunction over colors c
    of (v has color c) and the function of r_c.
    """
    if "u" in dd.function_cache:
        return dd.function_cache["u"]
    enc = color_encoding(dd.arity())
    built = {TRUE_TERMINAL: enc.bdd.true, FALSE_TERMINAL: enc.bdd.false}

    def build(ref: NodeRef):
        if ref not in built:
            node = _resolve(dd, ref)
            u = enc.bdd.false
            for color, child in enumerate(node.children, start=1):
                u |= enc.equals(node.vertex, color) & build(child)
            built[ref] = u
        return built[ref]

    _resolve(dd, dd.root)
    dd.function_cache["u"] = build(dd.root)
    return dd.function_cache["u"]


def _export(enc: ColorEncoding, u, tested: Sequence[int], order: Sequence[int]) -> DecisionDiagram:
    """
    Node table of `u` testing `tested` in sequence.

    One node per (depth, cofactor) pair; a False cofactor jumps straight to
    the False terminal and True only becomes a terminal after the last
    tested vertex.

    Raises:
        DiagramError: `u` depends on a vertex outside `tested`.
    """
    ids: dict[tuple[int, object], int] = {}
    nodes: dict[int, DDNode] = {}

    def node_for(depth: int, f) -> NodeRef:
        if f == enc.bdd.false:
            return FALSE_TERMINAL
        if depth == len(tested):
            if f != enc.bdd.true:
                raise DiagramError("function depends on vertices outside the diagram")
            return TRUE_TERMINAL
        key = (depth, f)
        if key not in ids:
            ids[key] = len(ids)
            vertex = tested[depth]
            children = tuple(node_for(depth + 1, enc.cofactor(f, vertex, c)) for c in range(1, enc.d + 1))
            nodes[ids[key]] = DDNode(vertex, children)
        return ids[key]

    root = node_for(0, u)
    dd = DecisionDiagram(order=tuple(order), root=root, nodes=nodes)
    if nodes:
        dd.function_cache["u"] = u
    return dd


# ============================================================================
# VALIDATION AND EVALUATION
# ============================================================================


def _resolve(dd: DecisionDiagram, ref: NodeRef) -> DDNode | str:
    if ref in TERMINALS:
        return ref
    try:
        return dd.nodes[ref]
    except (KeyError, TypeError) as exc:
        raise DiagramError(f"dangling node reference {ref!r}") from exc


def dd_validate(dd: DecisionDiagram, d: int) -> None:
    """
    Check the structural invariants of an ordered diagram.

    Every node has exactly d children, every reference resolves, node
    vertices appear in `order`, and every edge goes strictly forward in the
    order (hence the diagram is acyclic and no path tests a vertex twice).

    Raises:
        DiagramError: on the first violated invariant.
    """
    position = {v: i for i, v in enumerate(dd.order)}
    if len(position) != len(dd.order):
        raise DiagramError("order lists a vertex twice")
    _resolve(dd, dd.root)
    for node_id, node in dd.nodes.items():
        if node.vertex not in position:
            raise DiagramError(f"node {node_id} tests vertex {node.vertex} missing from order")
        if len(node.children) != d:
            raise DiagramError(f"node {node_id} has {len(node.children)} children, expected {d}")
        for child_ref in node.children:
            child = _resolve(dd, child_ref)
            if isinstance(child, DDNode) and position[child.vertex] <= position[node.vertex]:
                raise DiagramError(f"node {node_id} -> {child_ref} breaks the variable order")


def dd_evaluate(dd: DecisionDiagram, coloring: Sequence[int]) -> bool:
    """
    Value of the diagram under a vertex coloring.

    Args:
        dd: the diagram.
        coloring: colors of vertices 1..n (coloring[v - 1] is the color of v).

    Raises:
        DiagramError: the node table has a dangling reference.
        DimensionError: a tested vertex lies outside the coloring or carries
            a color without a branch.
    """
    if dd.root in TERMINALS:
        return dd.root == TRUE_TERMINAL
    d = dd.arity()
    values = {}
    enc = color_encoding(d)
    for vertex in sorted(dd.vertices()):
        if not 1 <= vertex <= len(coloring):
            raise DimensionError(f"diagram tests vertex {vertex} outside the coloring")
        color = coloring[vertex - 1]
        if not 1 <= color <= d:
            raise DimensionError(f"color {color} has no branch at vertex {vertex}")
        values.update(enc.assignment(vertex, color))
    return enc.bdd.let(values, dd_function(dd)) == enc.bdd.true


# ============================================================================
# CONSTRUCTION
# ============================================================================


def dd_all_equal(vertices, d: int, order: Sequence[int]) -> DecisionDiagram:
    """
    Diagram accepting exactly the colorings giving all `vertices` one color.

    Steps:
        1. Sort the vertices by their position in `order`.
        2. Build the disjunction over colors c of "every vertex has color c".
        3. Export it testing the sorted vertices: the first node branches on
           color c, and branch c runs through a chain that only lets c pass.

    Node count is 1 + (k - 1) * d for k vertices, plus the two terminals.

    Raises:
        DiagramError: a vertex is missing from `order`.
    """
    position = {v: i for i, v in enumerate(order)}
    missing = [v for v in vertices if v not in position]
    if missing:
        raise DiagramError(f"vertices {sorted(missing)} missing from the order")
    chain = sorted(set(vertices), key=position.__getitem__)
    if not chain:
        return DecisionDiagram(order=tuple(order), root=TRUE_TERMINAL)

    enc = color_encoding(d)
    u = enc.bdd.false
    for color in range(1, d + 1):
        same = enc.bdd.true
        for vertex in chain:
            same &= enc.equals(vertex, color)
        u |= same
    dd = _export(enc, u, chain, order)
    dd_validate(dd, d)
    return dd


def _merged_order(a: DecisionDiagram, b: DecisionDiagram) -> tuple[int, ...]:
    """An order in which every vertex tested by `a` precedes those tested by `b`."""
    a_vertices, b_vertices = a.vertices(), b.vertices()
    for candidate in (a.order, b.order):
        position = {v: i for i, v in enumerate(candidate)}
        if not (a_vertices | b_vertices) <= position.keys():
            continue
        last_a = max((position[v] for v in a_vertices), default=-1)
        first_b = min((position[v] for v in b_vertices), default=len(candidate))
        if last_a < first_b:
            return tuple(candidate)
    head = [v for v in a.order if v not in b_vertices]
    return tuple(head + [v for v in b.order if v not in set(head)])


def dd_conjoin_disjoint(a: DecisionDiagram, b: DecisionDiagram) -> DecisionDiagram:
    """
    Conjunction of two diagrams that test disjoint vertex sets.

    Every True terminal of `a` is replaced by the root of `b`, and `b`'s
    nodes are renumbered after `a`'s. The result's order lists `a`'s vertices
    before `b`'s so the substitution keeps every path ordered.

    Raises:
        DiagramError: the diagrams test overlapping vertex sets or have
            different arities.
    """
    overlap = a.vertices() & b.vertices()
    if overlap:
        raise DiagramError(f"diagrams overlap on vertices {sorted(overlap)}")
    if a.nodes and b.nodes and a.arity() != b.arity():
        raise DiagramError(f"cannot conjoin arity {a.arity()} with arity {b.arity()}")

    order = _merged_order(a, b)
    offset = max(a.nodes, default=-1) + 1

    def shift(ref: NodeRef) -> NodeRef:
        return ref if ref in TERMINALS else ref + offset

    b_root = shift(b.root)

    def substitute(ref: NodeRef) -> NodeRef:
        return b_root if ref == TRUE_TERMINAL else ref

    nodes = {
        node_id: DDNode(node.vertex, tuple(substitute(c) for c in node.children))
        for node_id, node in a.nodes.items()
    }
    for node_id, node in b.nodes.items():
        nodes[node_id + offset] = DDNode(node.vertex, tuple(shift(c) for c in node.children))
    dd = DecisionDiagram(order=order, root=substitute(a.root), nodes=nodes)
    dd_validate(dd, dd.arity())
    return dd


def dd_from_symmetric(constraint: Constraint, order: Sequence[int], d: int) -> DecisionDiagram:
    """
    Layered diagram of a symmetric constraint over the vertices in `order`.

    Steps:
        1. Build the BDD function bottom-up over (depth, partial count
           vector) states; the last layer is constraint.holds on the counts.
        2. Export it testing every vertex of `order`, one node per distinct
           cofactor at each depth.
    """
    check_dimension(constraint, d)
    order = tuple(order)
    if not order:
        return dd_constant(constraint.holds((0,) * d), d)

    enc = color_encoding(d)
    states: dict[tuple[int, tuple[int, ...]], object] = {}

    def function_for(depth: int, counts: tuple[int, ...]):
        if depth == len(order):
            return enc.bdd.true if constraint.holds(counts) else enc.bdd.false
        key = (depth, counts)
        if key not in states:
            u = enc.bdd.false
            for color in range(d):
                bumped = counts[:color] + (counts[color] + 1,) + counts[color + 1 :]
                u |= enc.equals(order[depth], color + 1) & function_for(depth + 1, bumped)
            states[key] = u
        return states[key]

    dd = _export(enc, function_for(0, (0,) * d), order, order)
    dd_validate(dd, d)
    logger.debug("✓ Built count diagram with %d nodes over %d vertices", len(dd.nodes), len(order))
    return dd


# ============================================================================
# JSON FORMAT
# ============================================================================


def _ref_from_json(ref) -> NodeRef:
    if ref in TERMINALS:
        return ref
    if isinstance(ref, bool) or not isinstance(ref, int):
        raise InputFormatError(f"node reference must be an id, 'T' or 'F', got {ref!r}")
    return ref


def parse_dd(text, d: int | None = None) -> DecisionDiagram:
    """
    Parse the JSON diagram format and validate it.

    When `d` is omitted the arity is taken from the first node.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"malformed diagram JSON: {exc}") from exc
    if not isinstance(doc, dict) or not {"order", "root", "nodes"} <= doc.keys():
        raise InputFormatError("diagram document needs 'order', 'root' and 'nodes'")

    nodes = {}
    for index, raw in enumerate(doc["nodes"]):
        try:
            node_id, vertex, children = raw["id"], raw["vertex"], raw["children"]
        except (KeyError, TypeError) as exc:
            raise InputFormatError("node needs 'id', 'vertex', 'children'", index, "node") from exc
        if node_id in nodes:
            raise InputFormatError(f"duplicate node id {node_id}", index, "node")
        nodes[node_id] = DDNode(vertex, tuple(_ref_from_json(c) for c in children))

    dd = DecisionDiagram(order=tuple(doc["order"]), root=_ref_from_json(doc["root"]), nodes=nodes)
    if d is None:
        d = len(next(iter(nodes.values())).children) if nodes else 1
    dd_validate(dd, d)
    return dd


def dd_to_json(dd: DecisionDiagram) -> str:
    doc = {
        "order": list(dd.order),
        "root": dd.root,
        "nodes": [
            {"id": node_id, "vertex": node.vertex, "children": list(node.children)}
            for node_id, node in sorted(dd.nodes.items())
        ],
    }
    return json.dumps(doc, separators=(",", ":"))
