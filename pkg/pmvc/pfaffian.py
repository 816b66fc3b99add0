"""
Planar embeddings, Pfaffian orientations and the deterministic planar decider.

An embedding is a rotation system: for every vertex the counter-clockwise
cyclic order of its incident edge ids. Edge k owns darts 2k (leaving its u
endpoint) and 2k + 1 (leaving v); dart i ^ 1 is the reverse of dart i. The
vertex permutation vp sends a dart to the next dart around its tail, and
faces are the cycles of fp(i) = vp(i ^ 1).

Module contents:
    - PlanarEmbedding / parse_embedding: the rotation-system model and its JSON form.
    - faces: face cycles of the embedded multigraph, with Euler's formula checked.
    - pfaffian_orientation: +-1 values on vertex pairs with an odd number of
      edges agreeing with the traversal of every face but one per component.
    - matching_sign: sign of a matching's Pfaffian term under an orientation.
    - planar_decide_sym: one exact evaluation of det(A) at the orientation.

Created on 16-10-26
"""

import json
import logging
from dataclasses import dataclass

import networkx as nx

from .algebraic_solver import PitConfig, TriStateAnswer, XAssignment, build_adapted_tutte, decide_from_determinant
from .constraints import Constraint, check_dimension
from .determinants import bareiss_det
from .errors import InputFormatError, InvalidEmbeddingError
from .graph_core import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlanarEmbedding:
    """Counter-clockwise rotation of incident edge ids around every vertex."""

    rotation: dict[int, tuple[int, ...]]


def parse_embedding(text) -> PlanarEmbedding:
    """Parse {"rotation": {"<vertex>": [edge ids counter-clockwise], ...}}."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
        rotation = {int(v): tuple(int(e) for e in ids) for v, ids in doc["rotation"].items()}
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputFormatError(f"malformed embedding: {exc}") from exc
    return PlanarEmbedding(rotation)


def embedding_to_json(emb: PlanarEmbedding) -> str:
    return json.dumps({"rotation": {str(v): list(ids) for v, ids in sorted(emb.rotation.items())}})


# ============================================================================
# FACES
# ============================================================================


def _face_cycles(endpoints: list[tuple[int, int]], rotation: dict[int, list[int]]) -> list[list[int]]:
    """
    Cycles of the face permutation.

    Args:
        endpoints: (u, v) per edge index; dart 2k leaves u, dart 2k + 1 leaves v.
        rotation: vertex -> counter-clockwise list of edge indices.
    """
    vp = {}
    for vertex, ids in rotation.items():
        darts = [2 * k if endpoints[k][0] == vertex else 2 * k + 1 for k in ids]
        for position, dart in enumerate(darts):
            vp[dart] = darts[(position + 1) % len(darts)]

    seen = set()
    cycles = []
    for start in range(2 * len(endpoints)):
        if start in seen:
            continue
        cycle = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            cycle.append(dart)
            dart = vp[dart ^ 1]
        cycles.append(cycle)
    return cycles


def _dart_tail_head(endpoints, dart: int) -> tuple[int, int]:
    u, v = endpoints[dart >> 1]
    return (u, v) if dart % 2 == 0 else (v, u)


def _components(g: Graph) -> list[set[int]]:
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from(g.simple_pairs())
    return [set(c) for c in nx.connected_components(simple)]


def faces(g: Graph, emb: PlanarEmbedding) -> list[list[int]]:
    """
    Face cycles (as dart lists) of the embedded multigraph.

    Raises:
        InvalidEmbeddingError: the rotation does not list every incident edge
            exactly once, or a component violates V - E + F = 2.
    """
    rotation = {v: list(emb.rotation.get(v, ())) for v in g.vertices}
    extra = set(emb.rotation) - set(g.vertices)
    if extra:
        raise InvalidEmbeddingError(f"rotation names unknown vertices {sorted(extra)}")
    for v in g.vertices:
        if sorted(rotation[v]) != g.incident(v):
            raise InvalidEmbeddingError(f"rotation at vertex {v} must list edges {g.incident(v)}")

    endpoints = [(e.u, e.v) for e in g.edges]
    cycles = _face_cycles(endpoints, rotation)
    _check_euler(_components(g), endpoints, cycles)
    logger.debug("✓ Embedding has %d faces", len(cycles))
    return cycles


def _check_euler(components, endpoints, cycles) -> None:
    for component in components:
        edge_count = sum(1 for u, _ in endpoints if u in component)
        if not edge_count:
            continue
        face_count = sum(1 for c in cycles if endpoints[c[0] >> 1][0] in component)
        if len(component) - edge_count + face_count != 2:
            raise InvalidEmbeddingError(
                f"component of vertex {min(component)}: V - E + F = "
                f"{len(component) - edge_count + face_count}, expected 2"
            )


def _simple_rotation(g: Graph, emb: PlanarEmbedding) -> tuple[list[tuple[int, int]], dict[int, list[int]]]:
    """
    Rotation of the underlying simple graph.

    Each vertex pair keeps its lowest edge id at both ends; deleting the
    other parallel copies from a planar rotation leaves it planar.
    """
    pairs = g.simple_pairs()
    index = {pair: k for k, pair in enumerate(pairs)}
    keep = {}
    for edge_id, e in enumerate(g.edges):
        keep.setdefault((min(e.u, e.v), max(e.u, e.v)), edge_id)
    rotation = {}
    for v in g.vertices:
        rotation[v] = []
        for edge_id in emb.rotation.get(v, ()):
            e = g.edges[edge_id]
            pair = (min(e.u, e.v), max(e.u, e.v))
            if keep[pair] == edge_id:
                rotation[v].append(index[pair])
    return pairs, rotation


# ============================================================================
# ORIENTATION
# ============================================================================


def pfaffian_orientation(g: Graph, emb: PlanarEmbedding) -> XAssignment:
    """
    Pfaffian orientation of the underlying simple graph.

    Steps:
        1. Validate the embedding (faces + Euler's formula).
        2. Drop every parallel edge but the lowest id from the rotation and
           re-check Euler's formula on the simple graph.
        3. Orient a BFS spanning forest from parent to child.
        4. Per component, root the dual tree at the largest face. Repeatedly
           take a non-root face with one unoriented edge and orient that edge
           so the face has an odd number of edges agreeing with its traversal.

    Returns:
        dict: x[(lo, hi)] = +1 when the edge is oriented hi -> lo, else -1,
        so entry (hi, lo) of the adapted Tutte matrix is positive exactly
        for edges leaving the larger vertex.

    Raises:
        InvalidEmbeddingError: invalid rotation system.
    """
    faces(g, emb)

    pairs, rotation = _simple_rotation(g, emb)
    index = {pair: k for k, pair in enumerate(pairs)}
    cycles = _face_cycles(pairs, rotation)
    _check_euler(_components(g), pairs, cycles)

    direction: dict[int, tuple[int, int]] = {}
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from(pairs)
    for component in _components(g):
        for parent, child in nx.bfs_edges(simple, min(component), sort_neighbors=sorted):
            direction[index[tuple(sorted((parent, child)))]] = (parent, child)

    for component in _components(g):
        comp_faces = [c for c in cycles if pairs[c[0] >> 1][0] in component]
        if not comp_faces:
            continue
        root = max(range(len(comp_faces)), key=lambda i: (len(comp_faces[i]), -i))
        pending = [c for i, c in enumerate(comp_faces) if i != root]
        while pending:
            for face in pending:
                open_edges = {dart >> 1 for dart in face if dart >> 1 not in direction}
                if len(open_edges) == 1:
                    break
            else:
                if any(k not in direction for c in comp_faces for k in (d >> 1 for d in c)):
                    raise InvalidEmbeddingError("face structure does not form a dual tree")
                break
            pending.remove(face)
            (edge,) = open_edges
            agreeing = 0
            for dart in face:
                if dart >> 1 != edge and direction[dart >> 1] == _dart_tail_head(pairs, dart):
                    agreeing += 1
            dart = next(d for d in face if d >> 1 == edge)
            tail, head = _dart_tail_head(pairs, dart)
            direction[edge] = (tail, head) if agreeing % 2 == 0 else (head, tail)

    unoriented = [pairs[k] for k in range(len(pairs)) if k not in direction]
    if unoriented:
        raise InvalidEmbeddingError(f"vertex pairs {unoriented} left unoriented")

    x = {}
    for k, (lo, hi) in enumerate(pairs):
        x[(lo, hi)] = 1 if direction[k] == (hi, lo) else -1
    logger.info("✓ Pfaffian orientation on %d vertex pairs", len(pairs))
    return x


def _skew_sign(i: int, j: int, x: XAssignment) -> int:
    lo, hi = min(i, j), max(i, j)
    value = x[(lo, hi)]
    return value if i > j else -value


def matching_sign(pairs, x: XAssignment) -> int:
    """
    Sign of the Pfaffian term of a matching under orientation x.

    The term is sgn(i1 j1 i2 j2 ...) times the product of the oriented
    entries a(i_k, j_k), where a(i, j) = +1 exactly when i -> j.
    """
    sequence = [v for pair in pairs for v in pair]
    inversions = sum(
        1 for a in range(len(sequence)) for b in range(a + 1, len(sequence)) if sequence[a] > sequence[b]
    )
    sign = -1 if inversions % 2 else 1
    for i, j in pairs:
        sign *= _skew_sign(i, j, x)
    return sign


def planar_decide_sym(
    g: Graph, emb: PlanarEmbedding, constraint: Constraint, cfg: PitConfig | None = None
) -> TriStateAnswer:
    """
    Deterministic decision on a planar graph.

    det(A) is evaluated once at the Pfaffian orientation. Matching terms
    never cancel there, so No is exact; a detected legal monomial is
    verified through extraction exactly like the randomized decider.
    """
    cfg = cfg or PitConfig()
    check_dimension(constraint, g.d)
    x = pfaffian_orientation(g, emb)
    det = bareiss_det(build_adapted_tutte(g, x))
    return decide_from_determinant(g, constraint, det, cfg, trials=1)
