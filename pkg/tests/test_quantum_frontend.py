import pytest

from pmvc.config import FIXTURES_PATH
from pmvc.constraints import And, CountEq, Or, compositions, legal_count_vectors, sym_eval
from pmvc.errors import InputFormatError
from pmvc.quantum_frontend import (
    CircuitSpec,
    Crystal,
    activation_sets,
    circuit_to_graph,
    illegal_coincidence,
    parse_circuit,
    parse_state,
    state_constraint,
)
from pmvc.treewidth_dp import solve_with_heuristic


@pytest.fixture
def seven_crystals():
    return parse_circuit((FIXTURES_PATH / "seven_crystals.circuit.json").read_text())


def test_circuit_translation(seven_crystals):
    g = circuit_to_graph(seven_crystals)
    assert g.n == 4 and g.d == 2
    assert len(g.edges) == 7
    assert (g.edges[2].u, g.edges[2].v, g.edges[2].color_at_u, g.edges[2].color_at_v) == (3, 4, 1, 2)
    assert seven_crystals.crystals[4].amp == -1.0


def test_activation_sets(seven_crystals):
    assert activation_sets(seven_crystals) == {
        frozenset({1, 2}),
        frozenset({1, 3}),
        frozenset({4, 6}),
        frozenset({5, 7}),
    }


def test_ghz_state_has_an_illegal_coincidence(seven_crystals):
    state = parse_state("GHZ")
    answer = illegal_coincidence(seven_crystals, state)
    assert answer.found
    assert {i + 1 for i in answer.matching} == {1, 3}


def test_general_dicke_state(seven_crystals):
    state = parse_state("GeneralDicke:2,2")
    g = circuit_to_graph(seven_crystals)
    constraint = state_constraint(state, g.n, g.d)
    assert constraint == And((CountEq(1, 2), CountEq(2, 2)))
    result = solve_with_heuristic(g, constraint)
    assert result.matching == frozenset({4, 6})


@pytest.mark.parametrize(
    "name, n, d, legal",
    [
        ("GHZ", 4, 3, {(4, 0, 0), (0, 4, 0), (0, 0, 4)}),
        ("W", 3, 2, {(2, 1)}),
        ("Dicke:2", 4, 2, {(2, 2)}),
        ("Dicke:0", 2, 2, {(2, 0)}),
        ("GeneralDicke:1,0,3", 4, 3, {(1, 0, 3)}),
    ],
)
def test_state_constraints(name, n, d, legal):
    state = parse_state(name)
    assert legal_count_vectors(state_constraint(state, n, d), n, d) == legal


def test_w_state_is_dicke_one():
    w, dicke = parse_state("W"), parse_state("Dicke:1")
    for n in range(1, 11):
        for d in range(1, 4):
            for counts in compositions(n, d):
                assert sym_eval(state_constraint(w, n, d), counts) == sym_eval(state_constraint(dicke, n, d), counts)


def test_ghz_is_a_disjunction():
    assert state_constraint(parse_state("GHZ"), 4, 2) == Or((CountEq(1, 4), CountEq(2, 4)))


@pytest.mark.parametrize("name", ["Bell", "Dicke", "Dicke:x", "W:1", "GHZ:2"])
def test_bad_state_names(name):
    with pytest.raises(InputFormatError):
        parse_state(name)


def test_state_parameters_are_checked():
    with pytest.raises(InputFormatError):
        state_constraint(parse_state("Dicke:5"), 4, 2)
    with pytest.raises(InputFormatError):
        state_constraint(parse_state("GeneralDicke:1,1"), 4, 2)
    with pytest.raises(InputFormatError):
        state_constraint(parse_state("GeneralDicke:4"), 4, 2)


def test_circuit_validation():
    with pytest.raises(InputFormatError, match="crystal 0"):
        CircuitSpec(2, 1, (Crystal(1, 3, 1, 1),))
    with pytest.raises(InputFormatError, match="crystal 0"):
        CircuitSpec(2, 1, (Crystal(1, 1, 1, 1),))
    with pytest.raises(InputFormatError, match="crystal 0"):
        CircuitSpec(2, 1, (Crystal(1, 2, 1, 2),))
    with pytest.raises(InputFormatError):
        parse_circuit('{"paths": 2, "modes": 1, "crystals": [{"a": 1}]}')
    with pytest.raises(InputFormatError):
        parse_circuit('{"paths": 2}')
