import pytest

from pmvc.algebraic_solver import (
    PitConfig,
    Verdict,
    build_adapted_tutte,
    build_weighted_tutte,
    default_sample_bound,
    extract_pm_sym,
    pit_decide_sym,
    pit_trial,
    stream,
    trial_count,
)
from pmvc.brute_oracle import oracle_sym
from pmvc.config import FIXTURES_PATH, PIT_STREAM
from pmvc.constraints import TRUE, CountEq, CountGe, legal_count_vectors, legal_terms
from pmvc.corpus import corpus_rng, random_constraint, random_graph
from pmvc.determinants import bareiss_det
from pmvc.errors import DimensionError, InputFormatError
from pmvc.graph_core import BiColoredEdge, Graph, check_perfect_matching, count_vector, inherited_coloring
from pmvc.polynomials import is_homogeneous, poly_ring
from pmvc.quantum_frontend import circuit_to_graph, parse_circuit


def is_legal(g, constraint, matching):
    return check_perfect_matching(g, matching) and constraint.holds(
        count_vector(inherited_coloring(g, matching), g.d)
    )


def corpus(seed, count, max_n, max_d):
    for index in range(count):
        rng = corpus_rng(seed, index)
        n = 2 * int(rng.integers(1, max_n // 2 + 1))
        d = int(rng.integers(1, max_d + 1))
        yield random_graph(rng, n, d), random_constraint(rng, n, d)


# ============================================================================
# MATRICES
# ============================================================================


def test_adapted_tutte_is_skew_and_sums_parallel_edges():
    g = circuit_to_graph(parse_circuit((FIXTURES_PATH / "seven_crystals.circuit.json").read_text()))
    x = {pair: 3 for pair in g.simple_pairs()}
    a = build_adapted_tutte(g, x)
    y1, y2 = poly_ring(2).gens
    assert a.is_skew_symmetric()
    assert a[3, 2] == 3 * (y1**2 + y1 * y2)
    assert a[2, 3] == -3 * (y1**2 + y1 * y2)
    assert a[0, 0] == 0


def test_adapted_tutte_needs_every_pair(load_graph):
    g = load_graph("c4_rbrb")
    with pytest.raises(InputFormatError, match="missing x value"):
        build_adapted_tutte(g, {(1, 2): 1})


def test_determinant_is_homogeneous_of_degree_2n(load_graph):
    g = load_graph("ladder_2x3")
    det = bareiss_det(build_adapted_tutte(g, {pair: i + 2 for i, pair in enumerate(g.simple_pairs())}))
    assert det
    assert is_homogeneous(det, 2 * g.n)


def test_weighted_matrix_uses_powers_of_two(load_graph):
    g = load_graph("k2")
    b = build_weighted_tutte(g, [5])
    y1, _ = poly_ring(2).gens
    assert b[1, 0] == 32 * y1**2
    assert b[0, 1] == -32 * y1**2


def test_parameters():
    assert trial_count(2**-20) == 20
    assert trial_count(0.5) == 1
    g = Graph(4, 1, (BiColoredEdge(1, 2, 1, 1),))
    assert default_sample_bound(g) == 8
    with pytest.raises(ValueError):
        PitConfig(epsilon=1.5)
    with pytest.raises(ValueError):
        PitConfig(sample_bound=1)


# ============================================================================
# DECISION
# ============================================================================


def test_single_edge_is_verified(load_graph):
    result = pit_decide_sym(load_graph("k2"), CountEq(1, 2))
    assert result.verdict is Verdict.YES_VERIFIED
    assert result.matching == frozenset({0})
    assert result.trials == 1


def test_odd_graph_is_no(load_graph):
    result = pit_decide_sym(load_graph("triangle"), TRUE)
    assert result.verdict is Verdict.NO
    assert not result.is_yes


def test_empty_graph_has_the_empty_matching():
    result = pit_decide_sym(Graph(0, 2), CountEq(1, 0))
    assert result.verdict is Verdict.YES_VERIFIED
    assert result.matching == frozenset()


def test_unsatisfiable_constraint_is_no_without_trials(load_graph):
    result = pit_decide_sym(load_graph("c4_rbrb"), CountEq(1, 5))
    assert result.verdict is Verdict.NO
    assert result.trials == 0


def test_four_cycle_cross_term_is_never_verified(load_graph):
    g = load_graph("c4_rbrb")
    assert not oracle_sym(g, CountEq(1, 2))
    result = pit_decide_sym(g, CountEq(1, 2), PitConfig(extraction_rounds=5))
    assert result.verdict is Verdict.YES_UNVERIFIED
    assert result.matching is None
    assert extract_pm_sym(g, CountEq(1, 2), max_rounds=5) is None


def test_four_cycle_legal_profiles(load_graph):
    g = load_graph("c4_rbrb")
    red = pit_decide_sym(g, CountEq(1, 4))
    assert red.verdict is Verdict.YES_VERIFIED and red.matching == frozenset({0, 2})
    blue = pit_decide_sym(g, CountGe(2, 4))
    assert blue.verdict is Verdict.YES_VERIFIED and blue.matching == frozenset({1, 3})


def test_no_verify_leaves_candidate_unverified(load_graph):
    result = pit_decide_sym(load_graph("k2"), TRUE, PitConfig(verify=False))
    assert result.verdict is Verdict.YES_UNVERIFIED


def test_constraint_beyond_d_is_rejected(load_graph):
    with pytest.raises(DimensionError):
        pit_decide_sym(load_graph("k2"), CountEq(3, 0))


def test_same_seed_same_answer():
    for g, constraint in corpus(31, 8, 6, 2):
        first = pit_decide_sym(g, constraint, PitConfig(seed=9))
        second = pit_decide_sym(g, constraint, PitConfig(seed=9))
        assert first == second


def test_pit_agrees_with_oracle_on_small_corpus():
    for g, constraint in corpus(32, 30, 6, 3):
        expected = oracle_sym(g, constraint).found
        result = pit_decide_sym(g, constraint)
        if expected:
            assert result.verdict is Verdict.YES_VERIFIED
            assert is_legal(g, constraint, result.matching)
        else:
            assert result.verdict is not Verdict.YES_VERIFIED


@pytest.mark.slow
def test_pit_agrees_with_oracle_on_full_corpus():
    for g, constraint in corpus(33, 200, 10, 3):
        expected = oracle_sym(g, constraint).found
        result = pit_decide_sym(g, constraint)
        assert (result.verdict is Verdict.YES_VERIFIED) == expected


def detection_rate(g, constraint, seed, trials):
    terms = legal_terms(legal_count_vectors(constraint, g.n, g.d))
    hits = sum(pit_trial(g, terms, default_sample_bound(g), stream(seed, PIT_STREAM, i)) for i in range(trials))
    return hits / trials


def test_single_trial_detection_rate_on_the_ladder(load_graph):
    assert detection_rate(load_graph("ladder_2x3"), CountEq(1, 3), 36, 200) >= 0.45


def test_single_trial_detection_rate_on_small_corpus():
    instances = [(g, c) for g, c in corpus(36, 40, 6, 3) if oracle_sym(g, c)]
    assert instances
    rates = [detection_rate(g, c, 36, 20) for g, c in instances]
    assert sum(rates) / len(rates) >= 0.45


@pytest.mark.slow
def test_single_trial_detection_rate(load_graph):
    assert detection_rate(load_graph("ladder_2x3"), CountEq(1, 3), 37, 1000) >= 0.45


# ============================================================================
# EXTRACTION
# ============================================================================


def test_extraction_on_the_ladder(load_graph):
    g = load_graph("ladder_2x3")
    assert extract_pm_sym(g, CountEq(1, 3)) == frozenset({4, 5, 6})
    assert extract_pm_sym(g, CountEq(1, 6)) == frozenset({0, 2, 6})
    assert extract_pm_sym(g, CountEq(1, 1)) == frozenset({1, 3, 4})
    assert extract_pm_sym(g, CountEq(1, 2), max_rounds=3) is None


def test_extraction_with_parallel_edges():
    g = Graph(
        4,
        3,
        (
            BiColoredEdge(1, 2, 1, 1),
            BiColoredEdge(1, 2, 2, 3),
            BiColoredEdge(3, 4, 3, 3),
            BiColoredEdge(3, 4, 1, 2),
        ),
    )
    constraint = CountEq(3, 3)
    matching = extract_pm_sym(g, constraint)
    assert matching == frozenset({1, 2})


def test_extraction_returns_legal_matchings_on_small_corpus():
    found = 0
    for g, constraint in corpus(34, 25, 8, 3):
        if not oracle_sym(g, constraint):
            continue
        matching = extract_pm_sym(g, constraint)
        assert matching is not None
        assert is_legal(g, constraint, matching)
        found += 1
    assert found > 0


@pytest.mark.slow
def test_extraction_success_rate():
    successes = attempts = 0
    for g, constraint in corpus(35, 400, 10, 3):
        if attempts == 100:
            break
        if not oracle_sym(g, constraint):
            continue
        attempts += 1
        matching = extract_pm_sym(g, constraint)
        if matching is not None and is_legal(g, constraint, matching):
            successes += 1
    assert attempts == 100
    assert successes >= 95
