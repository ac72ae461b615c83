"""The ``neighborly`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 violated precondition, 4 solver timeout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Sequence, TextIO

from .cnf import CnfFormula, from_dimacs_cnf, to_dimacs_cnf, witness_to_json
from .corpus import CorpusConfig
from .criticality import (
    EDGE,
    VERTEX,
    CriticalityReport,
    find_beta_stable_graphs,
    is_beta_critical,
    is_chi_critical,
    is_minimal_unsat,
    is_minimally_k_uncolorable,
)
from .errors import NeighborlyError, ParseError, Timeout
from .graph import Graph, describe
from .graph_io import dump_graph, graph_to_obj, load_graphs, to_graph6
from .oracle import (
    COLORING,
    VERTEX_COVER,
    NeighborOracle,
    colorer,
    one_query_chain,
    solve_by_added_isolated_vertex,
    vc_from_edge_addition,
    vc_from_vertex_deletion,
)
from .reductions import (
    cai_meyer_graph,
    f_transform,
    f_triangle_opt,
    f_vc_reduction,
    g_opt,
    g_opt_vertex,
    g_transform,
    join_lift,
    pw_transform,
    pw_witness,
    sat_witness,
    theta_gadget,
)
from .solvers import chromatic_number, min_vertex_cover, sat_solve
from .verify import SUITES, VerifyConfig, render_report, run_suite

DEFAULT_SEED = 42
GRAPH_FORMATS = ("graph6", "dimacs", "json")


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    output: str | None
    seed: int
    max_vertices: int
    max_clauses: int
    time_budget: float | None
    query_budget: int | None
    fmt: str | None


class _Usage(Exception):
    """Bad command-line usage detected after argument parsing."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _cnf(path: str) -> CnfFormula:
    return from_dimacs_cnf(_read(path))


def _graphs(path: str, fmt: str | None) -> list[Graph]:
    graphs = load_graphs(_read(path), fmt if fmt in GRAPH_FORMATS else None)
    if not graphs:
        raise ParseError("no graph in input")
    return graphs


def _graph(path: str, fmt: str | None) -> Graph:
    graphs = _graphs(path, fmt)
    if len(graphs) != 1:
        raise _Usage(f"expected one graph in {path}, found {len(graphs)}")
    return graphs[0]


class _Output:
    def __init__(self, path: str | None):
        self.path = path
        self.handle: TextIO = open(path, "w") if path else sys.stdout

    def write(self, text: str) -> None:
        self.handle.write(text)

    def close(self) -> None:
        if self.path:
            self.handle.close()


def _write_witnesses(cfg: RunConfig, args: argparse.Namespace, lines: Iterator[str]) -> None:
    path = args.witnesses or (cfg.output + ".witnesses.jsonl" if cfg.output else None)
    if path is None:
        print("witnesses not written (give -o or --witnesses)", file=sys.stderr)
        return
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")


def _graph_text(g: Graph, fmt: str | None, extra: dict | None = None) -> str:
    fmt = fmt or "json"
    if fmt == "json" and extra:
        obj = graph_to_obj(g)
        obj.update(extra)
        return json.dumps(obj, sort_keys=True) + "\n"
    return dump_graph(g, fmt)


def _coloring_line(key: str, item: object, colors: Sequence[int]) -> str:
    return json.dumps({key: item, "coloring": list(colors)}, sort_keys=True)


# -- reduce ------------------------------------------------------------------

REDUCTIONS = ("pw", "f", "cai-meyer", "g", "join-lift", "vc", "theta")


def cmd_reduce(cfg: RunConfig, args: argparse.Namespace) -> int:
    kind = args.kind
    out = _Output(cfg.output)
    try:
        if kind in ("pw", "f"):
            phi = _cnf(args.input)
            if kind == "pw":
                res = pw_transform(phi).formula
                wit = (witness_to_json(c, pw_witness(phi, c)) for c in range(res.num_clauses))
            else:
                res = f_transform(phi)
                wit = (witness_to_json(c, sat_witness(phi, c)) for c in range(res.num_clauses))
            out.write(to_dimacs_cnf(res))
            _write_witnesses(cfg, args, wit)
        elif kind == "cai-meyer":
            out.write(_graph_text(cai_meyer_graph(_cnf(args.input), not args.without_vc_vs).graph, cfg.fmt))
        elif kind == "g":
            phi = _cnf(args.input)
            g = g_transform(phi).graph
            out.write(_graph_text(g, cfg.fmt))

            def g_lines() -> Iterator[str]:
                for e in g.sorted_edges:
                    yield _coloring_line("deleted_edge", list(e), g_opt(phi, e))
                for v in g.vertices:
                    yield _coloring_line("deleted_vertex", v, g_opt_vertex(phi, v))
            _write_witnesses(cfg, args, g_lines())
        elif kind == "vc":
            phi = _cnf(args.input)
            red = f_vc_reduction(phi)
            out.write(_graph_text(red.graph, cfg.fmt, {"cover_bound": red.k}))
            _write_witnesses(cfg, args, (
                json.dumps({"deleted_triangle": list(red.triangle(j)), "cover": list(f_triangle_opt(phi, j))},
                           sort_keys=True)
                for j in range(red.formula.num_clauses)
            ))
        elif kind == "join-lift":
            out.write(_graph_text(join_lift(_graph(args.input, cfg.fmt), args.k), cfg.fmt))
        elif kind == "theta":
            if not args.second:
                raise _Usage("theta needs two graph inputs")
            g, h = _graph(args.input, cfg.fmt), _graph(args.second, cfg.fmt)
            out.write(_graph_text(theta_gadget(g, h), cfg.fmt))
    finally:
        out.close()
    return 0


# -- solve -------------------------------------------------------------------


def cmd_solve(cfg: RunConfig, args: argparse.Namespace) -> int:
    out = _Output(cfg.output)
    try:
        if args.problem == "sat":
            a = sat_solve(_cnf(args.input), cfg.time_budget)
            obj = {"problem": "sat", "value": a is not None,
                   "witness": None if a is None else [int(x) for x in a]}
            out.write(json.dumps(obj, sort_keys=True) + "\n")
            return 0
        for g in _graphs(args.input, cfg.fmt):
            if args.problem == "chromatic":
                value, witness = chromatic_number(g, cfg.time_budget) if g.vertex_count else (0, ())
            else:
                witness = min_vertex_cover(g, cfg.time_budget)
                value = len(witness)
            obj = {"problem": args.problem, "value": value, "witness": list(witness)}
            out.write(json.dumps(obj, sort_keys=True) + "\n")
    finally:
        out.close()
    return 0


# -- oracle-run --------------------------------------------------------------

# algorithm -> (problem, modification kind, default query budget, runner)
ORACLE_ALGORITHMS: dict[str, tuple[str, str, int | None, Callable[[Graph, NeighborOracle], Sequence[int]]]] = {
    "colorer": (COLORING, "add-edge", 2, colorer),
    "vc-vertex-del": (VERTEX_COVER, "delete-vertex", 2, vc_from_vertex_deletion),
    "vc-edge-add": (VERTEX_COVER, "add-edge", 2, vc_from_edge_addition),
    "coloring-isolated": (COLORING, "add-vertex", 1,
                          lambda g, o: solve_by_added_isolated_vertex(g, COLORING, o)),
    "vc-isolated": (VERTEX_COVER, "add-vertex", 1,
                    lambda g, o: solve_by_added_isolated_vertex(g, VERTEX_COVER, o)),
}
CHAIN_ALGORITHMS = {
    "chain-coloring-add-edge": (COLORING, "add-edge"),
    "chain-vc-delete-vertex": (VERTEX_COVER, "delete-vertex"),
    "chain-vc-add-edge": (VERTEX_COVER, "add-edge"),
}


def cmd_oracle_run(cfg: RunConfig, args: argparse.Namespace) -> int:
    out = _Output(cfg.output)
    try:
        for g in _graphs(args.input, cfg.fmt):
            if args.algorithm in CHAIN_ALGORITHMS:
                problem, kind = CHAIN_ALGORITHMS[args.algorithm]
                res = one_query_chain(g, problem, kind)
                obj = {"algorithm": args.algorithm, "solution": list(res.solution),
                       "steps": [describe(m) for m in res.modifications]}
                out.write(json.dumps(obj, sort_keys=True) + "\n")
                continue
            problem, kind, default_budget, run = ORACLE_ALGORITHMS[args.algorithm]
            budget = cfg.query_budget if cfg.query_budget is not None else default_budget
            oracle = NeighborOracle(problem, kind, budget, cfg.time_budget)
            sol = run(g, oracle)
            size = len(set(sol)) if problem == COLORING else len(sol)
            obj = {"algorithm": args.algorithm, "solution": list(sol), "size": size,
                   "queries": oracle.queries, "budget": budget}
            out.write(json.dumps(obj, sort_keys=True) + "\n")
            out.write(oracle.transcript_jsonl())
    finally:
        out.close()
    return 0


# -- recognize / catalog -----------------------------------------------------

NOTIONS: dict[str, Callable[[Graph, int], CriticalityReport]] = {
    "chi-critical": lambda g, k: is_chi_critical(g, EDGE),
    "chi-vertex-critical": lambda g, k: is_chi_critical(g, VERTEX),
    "beta-critical": lambda g, k: is_beta_critical(g, EDGE),
    "beta-vertex-critical": lambda g, k: is_beta_critical(g, VERTEX),
    "edge-minimal-uncolorable": lambda g, k: is_minimally_k_uncolorable(g, k, EDGE),
    "vertex-minimal-uncolorable": lambda g, k: is_minimally_k_uncolorable(g, k, VERTEX),
}


def cmd_recognize(cfg: RunConfig, args: argparse.Namespace) -> int:
    out = _Output(cfg.output)
    try:
        if args.notion == "minimal-unsat":
            reports = [is_minimal_unsat(_cnf(args.input))]
        else:
            reports = [NOTIONS[args.notion](g, args.k) for g in _graphs(args.input, cfg.fmt)]
        for r in reports:
            out.write(r.to_json() + "\n")
        yes = sum(r.verdict for r in reports)
        out.write(f"summary: {yes} true, {len(reports) - yes} false\n")
    finally:
        out.close()
    return 0


def cmd_catalog(cfg: RunConfig, args: argparse.Namespace) -> int:
    graphs = _graphs(args.input, cfg.fmt)
    found = find_beta_stable_graphs(graphs, cfg.max_vertices)
    out = _Output(cfg.output)
    try:
        for g in found:
            out.write(to_graph6(g) + "\n")
        out.write(f"summary: {len(found)} of {len(graphs)} graphs are beta-stable\n")
    finally:
        out.close()
    return 0


# -- verify ------------------------------------------------------------------


def cmd_verify(cfg: RunConfig, args: argparse.Namespace) -> int:
    vc = VerifyConfig(corpus=CorpusConfig(
        seed=cfg.seed, max_vertices=cfg.max_vertices, max_clauses=cfg.max_clauses,
        max_variables=args.max_variables,
    ))

    def progress(r) -> None:
        print(f"[{r.number}] {'PASS' if r.passed else 'FAIL'}", file=sys.stderr, flush=True)

    results = run_suite(args.suite, vc, progress if args.progress else None)
    out = _Output(cfg.output)
    try:
        out.write(render_report(args.suite, vc, results))
    finally:
        out.close()
    return 0 if all(r.passed for r in results) else 1


# -- argument parsing --------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None,
                   help=f"corpus seed (default: $NEIGHBORLY_SEED or {DEFAULT_SEED})")
    p.add_argument("--max-vertices", type=int, default=None)
    p.add_argument("--max-clauses", type=int, default=4)
    p.add_argument("--time-budget-ms", type=int, default=None)
    p.add_argument("--query-budget", type=int, default=None)
    p.add_argument("--format", choices=GRAPH_FORMATS, default=None, dest="fmt")
    p.add_argument("-o", "--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="neighborly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="build a reduction instance and its witnesses")
    p.add_argument("kind", choices=REDUCTIONS)
    p.add_argument("input")
    p.add_argument("second", nargs="?", help="second graph for theta")
    p.add_argument("--k", type=int, default=4, help="target color count for join-lift")
    p.add_argument("--without-vc-vs", action="store_true", help="drop the v_c-v_s edge (cai-meyer)")
    p.add_argument("--witnesses", default=None, help="JSONL file for witnesses")
    _common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="solve an instance exactly")
    p.add_argument("problem", choices=("chromatic", "vc", "sat"))
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle-run", help="run an oracle algorithm and print its transcript")
    p.add_argument("algorithm", choices=tuple(ORACLE_ALGORITHMS) + tuple(CHAIN_ALGORITHMS))
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_oracle_run)

    p = sub.add_parser("recognize", help="decide a criticality notion per input")
    p.add_argument("notion", choices=tuple(NOTIONS) + ("minimal-unsat",))
    p.add_argument("input")
    p.add_argument("--k", type=int, default=3)
    _common(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("catalog", help="list the beta-stable graphs of a graph6 stream")
    p.add_argument("notion", choices=("beta-stable",))
    p.add_argument("input")
    _common(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("suite", choices=tuple(SUITES))
    p.add_argument("--max-variables", type=int, default=6)
    p.add_argument("--progress", action="store_true", help="report each criterion on stderr")
    _common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("NEIGHBORLY_SEED")
        try:
            seed = int(env) if env else DEFAULT_SEED
        except ValueError:
            raise _Usage(f"NEIGHBORLY_SEED must be an integer, got {env!r}") from None
    if args.max_vertices is None:
        args.max_vertices = 8 if args.command == "catalog" else 7
    inputs = tuple(x for x in (getattr(args, "input", None), getattr(args, "second", None)) if x)
    budget = None if args.time_budget_ms is None else args.time_budget_ms / 1000
    return RunConfig(args.command, inputs, args.output, seed, args.max_vertices,
                     args.max_clauses, budget, args.query_budget, args.fmt)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _run_config(args)
        return args.func(cfg, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except Timeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return 4
    except NeighborlyError as exc:
        print(f"precondition violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (_Usage, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
