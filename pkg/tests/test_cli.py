import json

import pandas as pd
import pytest

from pmvc.cli import run


def run_json(capsys, argv):
    status = run(argv)
    out = capsys.readouterr().out
    return status, (json.loads(out) if out.strip() else None)


def test_solve_sym_pit_single_edge(capsys, fixture_path):
    status, report = run_json(
        capsys,
        ["solve-sym", "--graph", fixture_path("k2.graph.json"), "--constraint", fixture_path("red_2.constraint.json")],
    )
    assert status == 0
    assert report == {"answer": "yes", "verified": True, "certificate": [0], "method": "pit", "seed": 0, "trials": 1}


def test_report_is_one_line_of_json(capsys, fixture_path):
    run(["-v", "solve-sym", "--graph", fixture_path("k2.graph.json"), "--constraint", fixture_path("red_2.constraint.json")])
    captured = capsys.readouterr()
    assert len(captured.out.strip().splitlines()) == 1
    assert "Extracted" in captured.err


def test_planar_method_reports_unknown_for_cross_term(capsys, fixture_path):
    status, report = run_json(
        capsys,
        [
            "solve-sym",
            "--graph",
            fixture_path("c4_rbrb.graph.json"),
            "--constraint",
            fixture_path("red_2.constraint.json"),
            "--method",
            "planar",
            "--embedding",
            fixture_path("c4.embedding.json"),
            "--rounds",
            "3",
        ],
    )
    assert status == 0
    assert report["answer"] == "unknown" and report["verified"] is False
    assert "certificate" not in report


def test_exact_methods_agree(capsys, fixture_path):
    graph = fixture_path("ladder_2x3.graph.json")
    for constraint, expected in (("red_2.constraint.json", "no"), ("red_at_least_2.constraint.json", "yes")):
        answers = set()
        for method in ("dp", "oracle", "explicit"):
            status, report = run_json(
                capsys,
                ["solve-sym", "--graph", graph, "--constraint", fixture_path(constraint), "--method", method],
            )
            assert status == 0
            assert report["verified"] is True
            answers.add(report["answer"])
        assert answers == {expected}


def test_dp_with_given_decomposition(capsys, fixture_path):
    status, report = run_json(
        capsys,
        [
            "solve-sym",
            "--graph",
            fixture_path("p4.graph.json"),
            "--constraint",
            fixture_path("red_4.constraint.json"),
            "--method",
            "dp",
            "--td",
            fixture_path("p4.td.json"),
        ],
    )
    assert status == 0
    assert report["certificate"] == [0, 2]


def test_same_seed_same_output(capsys, fixture_path):
    argv = [
        "solve-sym",
        "--graph",
        fixture_path("ladder_2x3.graph.json"),
        "--constraint",
        fixture_path("red_at_least_2.constraint.json"),
        "--seed",
        "17",
    ]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_extract_sym(capsys, fixture_path):
    status, report = run_json(
        capsys,
        ["extract-sym", "--graph", fixture_path("c4_rbrb.graph.json"), "--constraint", fixture_path("red_4.constraint.json")],
    )
    assert status == 0
    assert report["certificate"] == [0, 2]

    status, report = run_json(
        capsys,
        [
            "extract-sym",
            "--graph",
            fixture_path("c4_rbrb.graph.json"),
            "--constraint",
            fixture_path("red_2.constraint.json"),
            "--rounds",
            "2",
        ],
    )
    assert status == 3 and report is None


def test_solve_dd(capsys, fixture_path, tmp_path):
    prefix = tmp_path / "sat"
    assert run(["reduce", "sat3", "--cnf", fixture_path("single_clause.cnf"), "--out-prefix", str(prefix)]) == 0
    reduced = json.loads(capsys.readouterr().out)
    assert reduced["vertices"] == 6 and reduced["edges"] == 15 and reduced["dd_nodes"] == 5
    assert len(reduced["files"]) == 3

    status, report = run_json(
        capsys, ["solve-dd", "--graph", f"{prefix}.graph.json", "--dd", f"{prefix}.dd.json"]
    )
    assert status == 0 and report["answer"] == "yes"


def test_reduce_xpm(capsys, fixture_path, tmp_path):
    prefix = tmp_path / "xpm"
    status, report = run_json(
        capsys,
        ["reduce", "xpm", "--graph", fixture_path("c4_rbrb.graph.json"), "--k", "1", "--out-prefix", str(prefix)],
    )
    assert status == 0 and report["k"] == 1
    constraint = json.loads((tmp_path / "xpm.constraint.json").read_text())
    assert constraint == {"type": "count_eq", "color": 1, "k": 2}


def test_from_circuit(capsys, fixture_path, tmp_path):
    status, report = run_json(
        capsys,
        [
            "from-circuit",
            "--circuit",
            fixture_path("seven_crystals.circuit.json"),
            "--state",
            "GHZ",
            "--out-prefix",
            str(tmp_path / "circuit"),
        ],
    )
    assert status == 0
    assert report["coincidences"] == [[1, 2], [1, 3], [4, 6], [5, 7]]
    assert report["illegal_coincidence"] == [1, 3]
    assert (tmp_path / "circuit.graph.json").exists()


def test_oracle_enumerate(capsys, fixture_path):
    status, report = run_json(capsys, ["oracle", "enumerate", "--graph", fixture_path("c4_rbrb.graph.json")])
    assert status == 0
    assert report["count"] == 2
    assert report["matchings"][0] == {"edges": [0, 2], "coloring": [1, 1, 1, 1]}


def test_crosscheck_writes_csv(capsys, tmp_path):
    out = tmp_path / "crosscheck.csv"
    status, report = run_json(
        capsys, ["crosscheck", "--count", "6", "--max-n", "6", "--max-d", "2", "--seed", "3", "--out", str(out)]
    )
    assert status == 0
    assert report["instances"] == 6
    df = pd.read_csv(out)
    assert len(df) == 6
    assert (df["oracle"] == df["dp"]).all()
    assert report["disagreements"] == int((~df["agree"]).sum())
    assert report["oracle_yes"] == int(df["oracle"].sum())


@pytest.mark.parametrize(
    "argv",
    [
        ["solve-sym", "--graph", "missing.json", "--constraint", "missing.json"],
        ["solve-sym"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(argv) == 2
    assert capsys.readouterr().out == ""


def test_invalid_graph_exits_2(capsys, tmp_path, fixture_path):
    bad = tmp_path / "bad.graph.json"
    bad.write_text('{"n": 2, "d": 2, "edges": [[1, 1, 1, 1]]}')
    assert run(["solve-sym", "--graph", str(bad), "--constraint", fixture_path("red_2.constraint.json")]) == 2
    assert "edge 0" in capsys.readouterr().err


def test_planar_without_embedding_exits_2(fixture_path):
    argv = ["solve-sym", "--graph", fixture_path("c4_rbrb.graph.json"), "--constraint", fixture_path("red_2.constraint.json")]
    assert run(argv + ["--method", "planar"]) == 2


def test_explicit_limit_exits_3(tmp_path):
    graph = tmp_path / "big.graph.json"
    graph.write_text(json.dumps({"n": 14, "d": 2, "edges": [[v, v + 1, 1, 1] for v in range(1, 14, 2)]}))
    constraint = tmp_path / "true.constraint.json"
    constraint.write_text('{"type": "and", "args": []}')
    assert run(["solve-sym", "--graph", str(graph), "--constraint", str(constraint), "--method", "explicit"]) == 3
