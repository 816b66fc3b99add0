import pytest

from pmvc.algebraic_solver import Verdict
from pmvc.brute_oracle import enumerate_pms, oracle_sym
from pmvc.constraints import CountEq
from pmvc.errors import InputFormatError, InvalidEmbeddingError
from pmvc.graph_core import BiColoredEdge, Graph
from pmvc.pfaffian import (
    PlanarEmbedding,
    embedding_to_json,
    faces,
    matching_sign,
    parse_embedding,
    pfaffian_orientation,
    planar_decide_sym,
)

K4 = Graph(
    4,
    2,
    (
        BiColoredEdge(1, 2, 1, 1),
        BiColoredEdge(1, 3, 2, 2),
        BiColoredEdge(1, 4, 1, 2),
        BiColoredEdge(2, 3, 1, 2),
        BiColoredEdge(2, 4, 2, 2),
        BiColoredEdge(3, 4, 1, 1),
    ),
)
# vertex 4 sits inside the triangle 1, 2, 3
K4_PLANAR = PlanarEmbedding({1: (0, 2, 1), 2: (3, 4, 0), 3: (1, 5, 3), 4: (5, 2, 4)})
K4_TORUS = PlanarEmbedding({1: (0, 1, 2), 2: (0, 3, 4), 3: (1, 3, 5), 4: (2, 4, 5)})

C4_WITH_DIGON = Graph(
    4,
    2,
    (
        BiColoredEdge(1, 2, 1, 1),
        BiColoredEdge(2, 3, 2, 2),
        BiColoredEdge(3, 4, 1, 1),
        BiColoredEdge(4, 1, 2, 2),
        BiColoredEdge(1, 2, 2, 2),
    ),
)
C4_WITH_DIGON_EMBEDDING = PlanarEmbedding({1: (0, 4, 3), 2: (4, 0, 1), 3: (1, 2), 4: (2, 3)})

# digon 1-2 encloses the path 1-3-5-2; the path 1-4-6-2 runs outside it
NESTED_DIGON = Graph(
    6,
    2,
    (
        BiColoredEdge(1, 2, 1, 1),
        BiColoredEdge(1, 2, 2, 2),
        BiColoredEdge(1, 3, 1, 1),
        BiColoredEdge(3, 5, 1, 1),
        BiColoredEdge(5, 2, 1, 1),
        BiColoredEdge(1, 4, 1, 1),
        BiColoredEdge(4, 6, 1, 1),
        BiColoredEdge(6, 2, 1, 1),
    ),
)
NESTED_DIGON_EMBEDDING = PlanarEmbedding(
    {1: (1, 2, 0, 5), 2: (7, 0, 4, 1), 3: (3, 2), 5: (4, 3), 4: (6, 5), 6: (6, 7)}
)


def assert_sign_property(g, emb):
    x = pfaffian_orientation(g, emb)
    signs = {
        matching_sign([(g.edges[i].u, g.edges[i].v) for i in sorted(matching)], x)
        for matching, _ in enumerate_pms(g)
    }
    assert len(signs) == 1


def test_face_counts(load_graph, load_embedding):
    assert len(faces(load_graph("c4_rbrb"), load_embedding("c4"))) == 2
    assert len(faces(load_graph("ladder_2x3"), load_embedding("ladder_2x3"))) == 3
    assert len(faces(K4, K4_PLANAR)) == 4
    assert len(faces(C4_WITH_DIGON, C4_WITH_DIGON_EMBEDDING)) == 3


def test_non_planar_rotation_is_rejected():
    with pytest.raises(InvalidEmbeddingError, match="V - E \\+ F"):
        faces(K4, K4_TORUS)


def test_rotation_must_list_incident_edges(load_graph):
    g = load_graph("c4_rbrb")
    with pytest.raises(InvalidEmbeddingError):
        faces(g, PlanarEmbedding({1: (0,), 2: (0, 1), 3: (1, 2), 4: (2, 3)}))
    with pytest.raises(InvalidEmbeddingError):
        faces(g, PlanarEmbedding({1: (0, 3), 2: (0, 1), 3: (1, 2), 4: (2, 3), 9: ()}))


@pytest.mark.parametrize(
    "graph, embedding",
    [
        ("c4_rbrb", "c4"),
        ("ladder_2x3", "ladder_2x3"),
    ],
)
def test_fixture_orientations_have_equal_matching_signs(graph, embedding, load_graph, load_embedding):
    assert_sign_property(load_graph(graph), load_embedding(embedding))


def test_k4_and_multigraph_orientations_have_equal_matching_signs():
    assert_sign_property(K4, K4_PLANAR)
    assert_sign_property(C4_WITH_DIGON, C4_WITH_DIGON_EMBEDDING)


def test_orientation_covers_every_pair_with_unit_values():
    x = pfaffian_orientation(K4, K4_PLANAR)
    assert set(x) == set(K4.simple_pairs())
    assert set(x.values()) <= {1, -1}


def test_disconnected_graph():
    g = Graph(4, 1, (BiColoredEdge(1, 2, 1, 1), BiColoredEdge(3, 4, 1, 1)))
    emb = PlanarEmbedding({1: (0,), 2: (0,), 3: (1,), 4: (1,)})
    assert len(faces(g, emb)) == 2
    assert planar_decide_sym(g, emb, CountEq(1, 4)).verdict is Verdict.YES_VERIFIED


def test_planar_decider_on_the_ladder(load_graph, load_embedding):
    g, emb = load_graph("ladder_2x3"), load_embedding("ladder_2x3")
    result = planar_decide_sym(g, emb, CountEq(1, 3))
    assert result.verdict is Verdict.YES_VERIFIED
    assert result.matching == frozenset({4, 5, 6})
    assert result.trials == 1
    assert planar_decide_sym(g, emb, CountEq(1, 4)).verdict is Verdict.NO


def test_planar_decider_exposes_cross_terms(load_graph, load_embedding):
    for graph, embedding in (("ladder_2x3", "ladder_2x3"), ("c4_rbrb", "c4")):
        g = load_graph(graph)
        constraint = CountEq(1, 2)
        assert not oracle_sym(g, constraint)
        result = planar_decide_sym(g, load_embedding(embedding), constraint)
        assert result.verdict is Verdict.YES_UNVERIFIED


def test_planar_decider_with_parallel_edges():
    result = planar_decide_sym(C4_WITH_DIGON, C4_WITH_DIGON_EMBEDDING, CountEq(1, 2))
    assert result.verdict is Verdict.YES_VERIFIED
    assert result.matching == frozenset({2, 4})


def test_digon_around_other_vertices():
    assert len(faces(NESTED_DIGON, NESTED_DIGON_EMBEDDING)) == 4
    x = pfaffian_orientation(NESTED_DIGON, NESTED_DIGON_EMBEDDING)
    assert set(x) == set(NESTED_DIGON.simple_pairs())
    assert x[(3, 5)] == 1 and x[(4, 6)] == 1
    assert x[(1, 2)] == -1 and x[(2, 6)] == -1
    assert_sign_property(NESTED_DIGON, NESTED_DIGON_EMBEDDING)

    result = planar_decide_sym(NESTED_DIGON, NESTED_DIGON_EMBEDDING, CountEq(2, 2))
    assert result.verdict is Verdict.YES_VERIFIED
    assert result.matching == frozenset({1, 3, 6})
    assert planar_decide_sym(NESTED_DIGON, NESTED_DIGON_EMBEDDING, CountEq(2, 4)).verdict is Verdict.NO


def test_embedding_json(load_embedding):
    emb = load_embedding("ladder_2x3")
    assert parse_embedding(embedding_to_json(emb)) == emb
    with pytest.raises(InputFormatError):
        parse_embedding('{"rotation": {"a": [0]}}')
    with pytest.raises(InputFormatError):
        parse_embedding('{"faces": []}')
