"""
Tree decompositions and their nice form.

Module contents:
    - TreeDecomposition: bags on a rooted tree.
    - validate_td: checks coverage and connectivity, reports the first violation.
    - heuristic_td: min-degree elimination decomposition via networkx.
    - compact_td: contracts tree edges whose bags are nested.
    - NodeKind / NiceNode / NiceTreeDecomposition: the nice form.
    - make_nice: conversion to Leaf / Introduce / Forget / Join nodes.
    - check_nice: kind invariants plus the Introduce and Join premises.
    - parse_td / td_to_json: JSON format both ways.

Created on 16-10-26
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_degree

from .errors import InputFormatError, InvalidDecompositionError
from .graph_core import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    edges: tuple[tuple[int, int], ...]
    root: int | None

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=1) - 1

    def neighbours(self) -> dict[int, list[int]]:
        adjacency = {node: [] for node in self.bags}
        for a, b in self.edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        return adjacency

    def children(self) -> dict[int, list[int]]:
        """Children of every node when the tree hangs from `root`."""
        adjacency = self.neighbours()
        result = {node: [] for node in self.bags}
        if self.root is None:
            return result
        stack, seen = [self.root], {self.root}
        while stack:
            node = stack.pop()
            for other in sorted(adjacency[node]):
                if other not in seen:
                    seen.add(other)
                    result[node].append(other)
                    stack.append(other)
        return result


class TDCheck(NamedTuple):
    valid: bool
    width: int
    message: str = ""

    def __bool__(self):
        return self.valid


def _tree_problem(td: TreeDecomposition) -> str:
    if not td.bags:
        return "" if td.root is None else f"root {td.root} is not a node"
    if td.root not in td.bags:
        return f"root {td.root} is not a node"
    for a, b in td.edges:
        if a not in td.bags or b not in td.bags:
            return f"tree edge ({a}, {b}) names an unknown node"
    tree = nx.Graph()
    tree.add_nodes_from(td.bags)
    tree.add_edges_from(td.edges)
    if len(td.edges) != len(td.bags) - 1 or not nx.is_connected(tree):
        return "nodes and edges do not form a tree"
    return ""


def validate_td(g: Graph, td: TreeDecomposition) -> TDCheck:
    """
    Check that td is a tree decomposition of g.

    Conditions: the nodes form a tree, bags only hold vertices of g, every
    vertex lies in some bag, every edge's endpoints share a bag, and the
    bags holding any vertex form a connected subtree.
    """
    problem = _tree_problem(td)
    if problem:
        return TDCheck(False, td.width, problem)

    for node, bag in td.bags.items():
        strays = [v for v in bag if not 1 <= v <= g.n]
        if strays:
            return TDCheck(False, td.width, f"bag {node} holds unknown vertices {sorted(strays)}")

    holders = {v: {node for node, bag in td.bags.items() if v in bag} for v in g.vertices}
    for v, nodes in holders.items():
        if not nodes:
            return TDCheck(False, td.width, f"vertex {v} is in no bag")

    for index, e in enumerate(g.edges):
        if not holders[e.u] & holders[e.v]:
            return TDCheck(False, td.width, f"edge {index} ({e.u}, {e.v}) is in no bag")

    tree = nx.Graph()
    tree.add_nodes_from(td.bags)
    tree.add_edges_from(td.edges)
    for v, nodes in holders.items():
        if not nx.is_connected(tree.subgraph(nodes)):
            return TDCheck(False, td.width, f"bags holding vertex {v} are not connected")
    return TDCheck(True, td.width)


def heuristic_td(g: Graph) -> TreeDecomposition:
    """Decomposition from the min-degree elimination heuristic (no optimality claim)."""
    if g.n == 0:
        return TreeDecomposition({}, (), None)
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from(g.simple_pairs())
    width, decomposition = treewidth_min_degree(simple)

    ordered = sorted(decomposition.nodes, key=lambda bag: sorted(bag))
    ids = {bag: i for i, bag in enumerate(ordered)}
    edges = tuple(sorted(tuple(sorted((ids[a], ids[b]))) for a, b in decomposition.edges))
    td = TreeDecomposition({i: frozenset(bag) for bag, i in ids.items()}, edges, 0)
    logger.debug("✓ Min-degree decomposition: %d bags, width %d", len(ordered), width)
    return td


def compact_td(td: TreeDecomposition) -> TreeDecomposition:
    """
    Contract every tree edge whose two bags are nested into the larger bag.

    Afterwards every non-root node holds a vertex its parent lacks, so there
    are at most n nodes.
    """
    bags = dict(td.bags)
    adjacency = {node: set(nbrs) for node, nbrs in td.neighbours().items()}
    root = td.root
    changed = True
    while changed:
        changed = False
        for a in sorted(adjacency):
            for b in sorted(adjacency[a]):
                if bags[a] <= bags[b]:
                    for other in adjacency[a] - {b}:
                        adjacency[other].discard(a)
                        adjacency[other].add(b)
                        adjacency[b].add(other)
                    adjacency[b].discard(a)
                    del adjacency[a], bags[a]
                    if root == a:
                        root = b
                    changed = True
                    break
            if changed:
                break
    edges = tuple(sorted({tuple(sorted((a, b))) for a in adjacency for b in adjacency[a]}))
    return TreeDecomposition(bags, edges, root)


# ============================================================================
# NICE TREE DECOMPOSITION
# ============================================================================


class NodeKind(str, Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: NodeKind
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None


@dataclass
class NiceTreeDecomposition:
    nodes: dict[int, NiceNode] = field(default_factory=dict)
    root: int | None = None

    def add(self, node: NiceNode) -> int:
        node_id = len(self.nodes)
        self.nodes[node_id] = node
        return node_id

    @property
    def width(self) -> int:
        return max((len(n.bag) for n in self.nodes.values()), default=1) - 1

    def postorder(self) -> list[int]:
        """Node ids with every child before its parent."""
        if self.root is None:
            return []
        order, stack = [], [(self.root, False)]
        while stack:
            node_id, expanded = stack.pop()
            if expanded:
                order.append(node_id)
                continue
            stack.append((node_id, True))
            for child in reversed(self.nodes[node_id].children):
                stack.append((child, False))
        return order

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = tuple(
            (parent, child) for parent, node in self.nodes.items() for child in node.children
        )
        return TreeDecomposition({i: n.bag for i, n in self.nodes.items()}, edges, self.root)


def _leaf_chain(ntd: NiceTreeDecomposition, bag: frozenset[int]) -> int:
    vertices = sorted(bag)
    current = ntd.add(NiceNode(NodeKind.LEAF, frozenset(vertices[:1]), (), vertices[0]))
    for i, v in enumerate(vertices[1:], start=2):
        current = ntd.add(NiceNode(NodeKind.INTRODUCE, frozenset(vertices[:i]), (current,), v))
    return current


def _transition(ntd: NiceTreeDecomposition, top: int, source: frozenset[int], target: frozenset[int]) -> int:
    bag = set(source)
    for v in sorted(source - target):
        bag.discard(v)
        top = ntd.add(NiceNode(NodeKind.FORGET, frozenset(bag), (top,), v))
    for v in sorted(target - source):
        bag.add(v)
        top = ntd.add(NiceNode(NodeKind.INTRODUCE, frozenset(bag), (top,), v))
    return top


def make_nice(td: TreeDecomposition, g: Graph | None = None) -> NiceTreeDecomposition:
    """
    Convert a tree decomposition into nice form with the same width.

    Steps:
        1. Contract nested neighbouring bags (at most n nodes remain).
        2. A leaf bag becomes Leaf(v1) followed by Introduce nodes.
        3. Each child is connected to its parent's bag by Forget nodes for
           vertices leaving and Introduce nodes for vertices entering.
        4. Nodes with several children combine them through binary Joins.

    The result has at most 4 * (tw + 1) * n nodes. The root bag is kept as
    is, not forced empty.

    Raises:
        InvalidDecompositionError: td is not a tree, or not a decomposition
            of g when g is given.
    """
    problem = _tree_problem(td)
    if problem:
        raise InvalidDecompositionError(problem)
    if g is not None:
        check = validate_td(g, td)
        if not check.valid:
            raise InvalidDecompositionError(check.message)

    ntd = NiceTreeDecomposition()
    if td.root is None:
        return ntd
    td = compact_td(td)
    if not td.bags[td.root]:
        return ntd
    children = td.children()

    def build(node: int) -> int:
        bag = td.bags[node]
        if not children[node]:
            return _leaf_chain(ntd, bag)
        tops = [_transition(ntd, build(child), td.bags[child], bag) for child in children[node]]
        top = tops[0]
        for other in tops[1:]:
            top = ntd.add(NiceNode(NodeKind.JOIN, bag, (top, other)))
        return top

    ntd.root = build(td.root)
    logger.debug("✓ Nice decomposition with %d nodes, width %d", len(ntd.nodes), ntd.width)
    return ntd


def check_nice(ntd: NiceTreeDecomposition) -> list[str]:
    """
    Problems with the nice structure, empty when there are none.

    Besides the per-kind bag rules this checks that an introduced vertex is
    absent from the whole subtree below, and that a Join bag equals the
    intersection of the vertex sets of its two subtrees.
    """
    problems = []
    below: dict[int, frozenset[int]] = {}
    for node_id in ntd.postorder():
        node = ntd.nodes[node_id]
        kids = [ntd.nodes[c] for c in node.children]
        union = frozenset(node.bag).union(*(below[c] for c in node.children))
        below[node_id] = union

        if node.kind is NodeKind.LEAF:
            if kids or len(node.bag) != 1:
                problems.append(f"leaf {node_id} must have no children and one vertex")
        elif node.kind is NodeKind.INTRODUCE:
            if len(kids) != 1 or node.vertex not in node.bag or kids[0].bag != node.bag - {node.vertex}:
                problems.append(f"introduce {node_id} child bag must be bag minus {node.vertex}")
            elif node.vertex in below[node.children[0]]:
                problems.append(f"introduce {node_id}: vertex {node.vertex} already occurs below")
        elif node.kind is NodeKind.FORGET:
            if len(kids) != 1 or node.vertex in node.bag or kids[0].bag != node.bag | {node.vertex}:
                problems.append(f"forget {node_id} child bag must be bag plus {node.vertex}")
        elif node.kind is NodeKind.JOIN:
            if len(kids) != 2 or any(k.bag != node.bag for k in kids):
                problems.append(f"join {node_id} needs two children with equal bags")
            elif below[node.children[0]] & below[node.children[1]] != node.bag:
                problems.append(f"join {node_id} bag is not the intersection of its subtrees")
    return problems


# ============================================================================
# JSON FORMAT
# ============================================================================


def parse_td(text) -> TreeDecomposition:
    """Parse {"root": id, "nodes": [{"id": int, "bag": [...]}], "edges": [[id, id], ...]}."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
        bags = {}
        for index, node in enumerate(doc["nodes"]):
            if node["id"] in bags:
                raise InputFormatError(f"duplicate node id {node['id']}", index, "node")
            bags[int(node["id"])] = frozenset(int(v) for v in node["bag"])
        edges = tuple((int(a), int(b)) for a, b in doc["edges"])
        root = doc.get("root")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputFormatError):
            raise
        raise InputFormatError(f"malformed tree decomposition: {exc}") from exc
    return TreeDecomposition(bags, edges, root)


def td_to_json(td: TreeDecomposition) -> str:
    doc = {
        "root": td.root,
        "nodes": [{"id": i, "bag": sorted(bag)} for i, bag in sorted(td.bags.items())],
        "edges": [list(e) for e in td.edges],
    }
    return json.dumps(doc, separators=(",", ":"))
