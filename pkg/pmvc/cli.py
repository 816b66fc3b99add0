"""
Command-line entry point.

Every subcommand prints one single-line JSON report on standard output;
logs go to standard error only.

Module contents:
    - build_parser: the argparse tree of subcommands.
    - run: parse argv, dispatch, print the report, return the exit status.
    - main: console entry point.

Exit status: 0 completed, 2 input or usage error, 3 resource limit.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import pandas as pd

from . import config
from .algebraic_solver import PitConfig, TriStateAnswer, Verdict, extract_pm_sym, pit_decide_sym
from .brute_oracle import enumerate_pms, oracle_dd, oracle_sym
from .constraints import colorings_from_symmetric, constraint_to_json, parse_constraint
from .corpus import corpus_rng, random_constraint, random_graph
from .decision_diagrams import dd_size, dd_to_json, parse_dd
from .errors import InputFormatError, PmvcError, ResourceLimitError
from .graph_core import find_explicit_matching, graph_to_json, parse_graph, serialize_graph
from .pfaffian import parse_embedding, planar_decide_sym
from .quantum_frontend import activation_sets, circuit_to_graph, illegal_coincidence, parse_circuit, parse_state, state_constraint
from .reductions import parse_dimacs, sat3_to_dd, xpm_to_sym
from .tree_decomposition import make_nice, parse_td
from .treewidth_dp import dp_solve_sym, solve_with_heuristic

logger = logging.getLogger(__name__)

METHODS = ("pit", "dp", "planar", "oracle", "explicit")


# ============================================================================
# REPORTS
# ============================================================================


def make_report(answer: str, verified: bool, certificate, method: str, seed: int, trials: int) -> dict:
    report = {"answer": answer, "verified": verified}
    if certificate is not None:
        report["certificate"] = sorted(certificate)
    report.update({"method": method, "seed": seed, "trials": trials})
    return report


def tri_state_report(result: TriStateAnswer, method: str, seed: int) -> dict:
    if result.verdict is Verdict.YES_VERIFIED:
        return make_report("yes", True, result.matching, method, seed, result.trials)
    if result.verdict is Verdict.YES_UNVERIFIED:
        return make_report("unknown", False, None, method, seed, result.trials)
    return make_report("no", False, None, method, seed, result.trials)


def exact_report(found: bool, matching, method: str, seed: int) -> dict:
    return make_report("yes" if found else "no", True, matching if found else None, method, seed, 0)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: Path, text: str) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + ("" if text.endswith("\n") else "\n"), encoding="utf-8")
    return str(path)


# ============================================================================
# SUBCOMMANDS
# ============================================================================


def cmd_solve_sym(args) -> dict:
    g = parse_graph(_read(args.graph))
    constraint = parse_constraint(_read(args.constraint))
    cfg = PitConfig(
        epsilon=args.epsilon,
        seed=args.seed,
        verify=not args.no_verify,
        extraction_rounds=args.rounds,
        trials=args.trials,
    )

    if args.method == "pit":
        return tri_state_report(pit_decide_sym(g, constraint, cfg), "pit", args.seed)
    if args.method == "planar":
        if not args.embedding:
            raise InputFormatError("--method planar needs --embedding")
        emb = parse_embedding(_read(args.embedding))
        return tri_state_report(planar_decide_sym(g, emb, constraint, cfg), "planar", args.seed)
    if args.method == "dp":
        if args.td:
            result = dp_solve_sym(g, constraint, make_nice(parse_td(_read(args.td)), g))
        else:
            result = solve_with_heuristic(g, constraint)
        return exact_report(result.answer, result.matching, "dp", args.seed)
    if args.method == "oracle":
        answer = oracle_sym(g, constraint)
        return exact_report(answer.found, answer.matching, "oracle", args.seed)

    colorings = colorings_from_symmetric(constraint, g.n, g.d)
    matching = find_explicit_matching(g, colorings)
    return exact_report(matching is not None, matching, "explicit", args.seed)


def cmd_extract_sym(args) -> dict:
    g = parse_graph(_read(args.graph))
    constraint = parse_constraint(_read(args.constraint))
    matching = extract_pm_sym(g, constraint, args.seed, args.rounds)
    if matching is None:
        raise ResourceLimitError(f"no legal matching extracted within {args.rounds} rounds")
    return make_report("yes", True, matching, "extract", args.seed, args.rounds)


def cmd_solve_dd(args) -> dict:
    g = parse_graph(_read(args.graph))
    dd = parse_dd(_read(args.dd), g.d)
    answer = oracle_dd(g, dd)
    return exact_report(answer.found, answer.matching, args.method, args.seed)


def cmd_reduce_sat3(args) -> dict:
    formula = parse_dimacs(_read(args.cnf))
    g, dd, gmap = sat3_to_dd(formula)
    prefix = args.out_prefix
    files = [
        _write(Path(f"{prefix}.graph.json"), serialize_graph(g)),
        _write(Path(f"{prefix}.dd.json"), dd_to_json(dd)),
        _write(Path(f"{prefix}.gadgets.json"), gmap.to_json()),
    ]
    return {
        "clauses": len(formula.clauses),
        "vertices": g.n,
        "edges": len(g.edges),
        "dd_nodes": dd_size(dd),
        "files": files,
    }


def cmd_reduce_xpm(args) -> dict:
    g, constraint = xpm_to_sym(parse_graph(_read(args.graph)), args.k)
    prefix = args.out_prefix
    files = [
        _write(Path(f"{prefix}.graph.json"), serialize_graph(g)),
        _write(Path(f"{prefix}.constraint.json"), constraint_to_json(constraint)),
    ]
    return {"k": args.k, "vertices": g.n, "edges": len(g.edges), "files": files}


def cmd_from_circuit(args) -> dict:
    spec = parse_circuit(_read(args.circuit))
    g = circuit_to_graph(spec)
    files = [_write(Path(f"{args.out_prefix}.graph.json"), serialize_graph(g))]
    report = {"vertices": g.n, "edges": len(g.edges)}

    if g.n <= config.ORACLE_VERTEX_LIMIT:
        report["coincidences"] = sorted(sorted(s) for s in activation_sets(spec))
    if args.state:
        state = parse_state(args.state)
        constraint = state_constraint(state, g.n, g.d)
        files.append(_write(Path(f"{args.out_prefix}.constraint.json"), constraint_to_json(constraint)))
        report["state"] = state.label
        if g.n <= config.ORACLE_VERTEX_LIMIT:
            illegal = illegal_coincidence(spec, state)
            report["illegal_coincidence"] = (
                sorted(i + 1 for i in illegal.matching) if illegal.found else None
            )
    report["files"] = files
    return report


def cmd_oracle_enumerate(args) -> dict:
    g = parse_graph(_read(args.graph))
    matchings = [
        {"edges": sorted(matching), "coloring": list(coloring)} for matching, coloring in enumerate_pms(g)
    ]
    return {"count": len(matchings), "matchings": matchings}


def cmd_crosscheck(args) -> dict:
    """
    Run oracle, dp and pit on a seeded random corpus and tabulate the answers.

    Steps:
        1. Instance i draws an even n <= max_n, d <= max_d, a graph and a
           constraint from the (seed, corpus stream, i) generator.
        2. Every solver answers; pit must be YES_VERIFIED exactly on oracle yes.
        3. The per-instance table goes to --out as CSV when requested.
    """
    rows = []
    for index in range(args.count):
        rng = corpus_rng(args.seed, index)
        n = 2 * int(rng.integers(1, args.max_n // 2 + 1))
        d = int(rng.integers(1, args.max_d + 1))
        g = random_graph(rng, n, d)
        constraint = random_constraint(rng, n, d)
        pit = pit_decide_sym(g, constraint, PitConfig(seed=args.seed))
        rows.append(
            {
                "instance": index,
                "n": n,
                "d": d,
                "edges": len(g.edges),
                "oracle": oracle_sym(g, constraint).found,
                "dp": solve_with_heuristic(g, constraint).answer,
                "pit": pit.verdict.value,
                "pit_verified": pit.verdict is Verdict.YES_VERIFIED,
                "graph": json.dumps(graph_to_json(g), separators=(",", ":")),
                "constraint": constraint_to_json(constraint),
            }
        )

    df = pd.DataFrame(rows)
    if df.empty:
        df = pd.DataFrame(columns=["oracle", "dp", "pit", "pit_verified", "agree"])
    else:
        df["agree"] = (df["oracle"] == df["dp"]) & (df["oracle"] == df["pit_verified"])
    report = {
        "instances": int(len(df)),
        "disagreements": int((~df["agree"].astype(bool)).sum()),
        "oracle_yes": int(df["oracle"].astype(bool).sum()),
        "pit_unverified": int((df["pit"] == Verdict.YES_UNVERIFIED.value).sum()),
        "seed": args.seed,
    }
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(out, index=False)
        report["out"] = str(out)
    logger.info("✓ Cross-checked %d instances, %d disagreements", report["instances"], report["disagreements"])
    return report


# ============================================================================
# PARSER AND ENTRY POINT
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmvc", description="Constrained perfect matchings in bi-colored graphs.")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("-v", "--verbose", action="store_true", help="shortcut for --log-level INFO")
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p):
        p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
        return p

    p = seeded(sub.add_parser("solve-sym", help="decide a symmetric constraint"))
    p.add_argument("--graph", required=True)
    p.add_argument("--constraint", required=True)
    p.add_argument("--method", choices=METHODS, default="pit")
    p.add_argument("--epsilon", type=float, default=config.DEFAULT_EPSILON)
    p.add_argument("--td")
    p.add_argument("--embedding")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--rounds", type=int, default=config.DEFAULT_EXTRACTION_ROUNDS)
    p.add_argument("--trials", type=int)
    p.set_defaults(handler=cmd_solve_sym)

    p = seeded(sub.add_parser("extract-sym", help="construct a legal perfect matching"))
    p.add_argument("--graph", required=True)
    p.add_argument("--constraint", required=True)
    p.add_argument("--rounds", type=int, default=config.DEFAULT_EXTRACTION_ROUNDS)
    p.set_defaults(handler=cmd_extract_sym)

    p = seeded(sub.add_parser("solve-dd", help="decide a decision-diagram constraint"))
    p.add_argument("--graph", required=True)
    p.add_argument("--dd", required=True)
    p.add_argument("--method", choices=["oracle"], default="oracle")
    p.set_defaults(handler=cmd_solve_dd)

    reduce_parser = sub.add_parser("reduce", help="build reduced instances")
    reduce_sub = reduce_parser.add_subparsers(dest="reduction", required=True)
    p = reduce_sub.add_parser("sat3")
    p.add_argument("--cnf", required=True)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(handler=cmd_reduce_sat3)
    p = reduce_sub.add_parser("xpm")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(handler=cmd_reduce_xpm)

    p = sub.add_parser("from-circuit", help="translate an optical circuit")
    p.add_argument("--circuit", required=True)
    p.add_argument("--state")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(handler=cmd_from_circuit)

    oracle_parser = sub.add_parser("oracle", help="exhaustive tools")
    oracle_sub = oracle_parser.add_subparsers(dest="oracle_command", required=True)
    p = oracle_sub.add_parser("enumerate")
    p.add_argument("--graph", required=True)
    p.set_defaults(handler=cmd_oracle_enumerate)

    p = seeded(sub.add_parser("crosscheck", help="compare solvers on a random corpus"))
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-d", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_crosscheck)
    return parser


def configure_logging(args) -> None:
    level = logging.INFO if args.verbose and args.log_level == "WARNING" else getattr(logging, args.log_level)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def run(argv=None) -> int:
    """Run one command; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return config.EXIT_OK if exc.code in (0, None) else config.EXIT_USAGE
    configure_logging(args)

    try:
        report = args.handler(args)
    except ResourceLimitError as exc:
        logger.error("Resource limit: %s", exc)
        return config.EXIT_LIMIT
    except (PmvcError, OSError, ValueError) as exc:
        logger.error("%s", exc)
        return config.EXIT_USAGE

    print(json.dumps(report, separators=(",", ":")))
    return config.EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
