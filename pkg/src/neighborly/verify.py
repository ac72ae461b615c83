"""Seeded property suites behind ``neighborly verify``.

Each criterion runs a family of checks over a generated corpus and records
how many items passed plus a counterexample for the first failure. Reports
contain no timings, so equal configurations give byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .cnf import CnfFormula
from .corpus import MUS_SPLITS, CorpusConfig, e3cnf_corpus, graph_pairs, small_graphs, split_mus
from .criticality import (
    EDGE,
    VERTEX,
    is_beta_vertex_critical,
    is_chi_critical,
    is_minimal_unsat,
    is_minimally_k_uncolorable,
)
from .errors import NeighborlyError
from .graph import Graph, enumerate_triangles, is_universal_edged
from .graph_io import to_graph6
from .oracle import (
    COLORING,
    VERTEX_COVER,
    NeighborOracle,
    colorer,
    one_query_chain,
    solve_by_added_isolated_vertex,
    subcol,
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
    sat_witness,
    theta_gadget,
)
from .solvers import (
    chromatic_number,
    color_count,
    is_proper,
    is_vertex_cover,
    k_colorable,
    min_vertex_cover,
    sat_solve,
    vertex_cover_number,
)


@dataclass(frozen=True)
class VerifyConfig:
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    formulas: int = 50
    coloring_formulas: int = 20
    vc_formulas: int = 20
    graph_pairs: int = 50
    join_lift_vertices: int = 6
    chain_vertices: int = 6
    subcol_max_k: int = 8


@dataclass
class Check:
    name: str
    items: int = 0
    failures: int = 0
    counterexample: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        self.items += 1
        if not ok:
            self.failures += 1
            if not self.counterexample:
                self.counterexample = describe()


@dataclass
class CriterionResult:
    number: int
    suite: str
    title: str
    checks: list[Check]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        head = f"[{self.number}] {self.suite} / {self.title}: {'PASS' if self.passed else 'FAIL'}"
        out = [head]
        for c in self.checks:
            status = "ok" if c.passed else f"FAIL ({c.failures} failing)"
            out.append(f"    {c.name}: {c.items} checked, {status}")
            if c.counterexample:
                out.append(f"      counterexample: {c.counterexample}")
        out.extend(f"    {n}" for n in self.notes)
        return out


class _Checks:
    def __init__(self, *names: str):
        self.by_name = {n: Check(n) for n in names}

    def __getitem__(self, name: str) -> Check:
        return self.by_name[name]

    def guarded(self, name: str, fn: Callable[[], bool], describe: Callable[[], str]) -> None:
        try:
            ok = fn()
        except NeighborlyError as exc:
            self[name].record(False, lambda: f"{describe()} raised {type(exc).__name__}: {exc}")
            return
        self[name].record(ok, describe)

    def all(self) -> list[Check]:
        return list(self.by_name.values())


def _cnf_text(phi: CnfFormula) -> str:
    return " | ".join(" ".join(map(str, c)) for c in phi.to_ints())


def _g6(g: Graph) -> str:
    return to_graph6(g)


# -- numpy helpers -----------------------------------------------------------


def _clause_arrays(phi: CnfFormula) -> tuple[np.ndarray, np.ndarray]:
    """Variable and polarity matrices for an E3CNF formula."""
    var = np.array([[l.var for l in c] for c in phi.clauses], dtype=np.int64)
    pos = np.array([[l.positive for l in c] for c in phi.clauses], dtype=bool)
    return var, pos


def _unsatisfied_clauses(var: np.ndarray, pos: np.ndarray, a: Iterable[bool]) -> np.ndarray:
    vals = np.asarray(tuple(a), dtype=bool)
    return np.flatnonzero(~(vals[var] == pos).any(axis=1))


def _edge_array(g: Graph) -> np.ndarray:
    return np.array(g.sorted_edges, dtype=np.int64).reshape(-1, 2)


def _conflicts(edges: np.ndarray, colors: Iterable[int]) -> np.ndarray:
    col = np.asarray(tuple(colors), dtype=np.int64)
    return np.flatnonzero(col[edges[:, 0]] == col[edges[:, 1]])


def _disjoint_triangles(g: Graph) -> list[frozenset[int]]:
    chosen: list[frozenset[int]] = []
    used: set[int] = set()
    for t in enumerate_triangles(g):
        if used.isdisjoint(t):
            chosen.append(frozenset(t))
            used.update(t)
            if len(chosen) == 2:
                break
    return chosen


# -- criteria ------------------------------------------------------------------


def sat_witness_criterion(cfg: VerifyConfig) -> CriterionResult:
    cc = cfg.corpus
    corpus = e3cnf_corpus(cfg.formulas, cc.seed, cc.max_clauses, cc.max_variables)
    checks = _Checks("f(phi) is E3CNF", "phi SAT iff f(phi) SAT", "witness per deleted clause")
    for phi in corpus:
        f = f_transform(phi)
        checks.guarded("f(phi) is E3CNF", f.is_e3cnf, lambda: _cnf_text(phi))
        checks.guarded(
            "phi SAT iff f(phi) SAT",
            lambda: (sat_solve(phi) is None) == (sat_solve(f) is None),
            lambda: _cnf_text(phi),
        )
        var, pos = _clause_arrays(f)
        for c in range(f.num_clauses):
            checks.guarded(
                "witness per deleted clause",
                lambda: set(_unsatisfied_clauses(var, pos, sat_witness(phi, c)).tolist()) <= {c},
                lambda: f"{_cnf_text(phi)} clause {c}",
            )
    return CriterionResult(1, "sat-witness", "search-free witnesses for f", checks.all())


def coloring_witness_criterion(cfg: VerifyConfig) -> CriterionResult:
    cc = cfg.corpus
    corpus = e3cnf_corpus(cfg.formulas, cc.seed, cc.max_clauses, cc.max_variables)[: cfg.coloring_formulas]
    checks = _Checks(
        "phi SAT iff g(phi) 3-colorable",
        "edge witness proper on g - e",
        "g - e not bipartite",
        "vertex witness proper on g - v",
        "g - v not bipartite",
    )
    for phi in corpus:
        g = g_transform(phi).graph
        checks.guarded(
            "phi SAT iff g(phi) 3-colorable",
            lambda: (sat_solve(phi) is None) == (k_colorable(g, 3) is None),
            lambda: _cnf_text(phi),
        )
        edges = _edge_array(g)
        tris = _disjoint_triangles(g)
        for i, e in enumerate(g.sorted_edges):
            def edge_ok() -> bool:
                col = g_opt(phi, e)
                if len(col) != g.vertex_count or min(col) < 1 or max(col) > 3:
                    return False
                return set(_conflicts(edges, col).tolist()) <= {i}
            checks.guarded("edge witness proper on g - e", edge_ok, lambda: f"{_cnf_text(phi)} edge {e}")
            checks["g - e not bipartite"].record(
                any(not set(e) <= t for t in tris), lambda: f"{_cnf_text(phi)} edge {e}"
            )
        for v in g.vertices:
            def vertex_ok() -> bool:
                col = g_opt_vertex(phi, v)
                if len(col) != g.vertex_count - 1 or min(col) < 1 or max(col) > 3:
                    return False
                keep = (edges[:, 0] != v) & (edges[:, 1] != v)
                sub = edges[keep]
                sub = sub - (sub > v)
                return _conflicts(sub, col).size == 0
            checks.guarded("vertex witness proper on g - v", vertex_ok, lambda: f"{_cnf_text(phi)} vertex {v}")
            checks["g - v not bipartite"].record(
                any(v not in t for t in tris), lambda: f"{_cnf_text(phi)} vertex {v}"
            )
    return CriterionResult(2, "coloring-witness", "optimal colorings of g - e and g - v", checks.all())


def minimality_criterion(cfg: VerifyConfig) -> CriterionResult:
    checks = _Checks(
        "input is minimally unsatisfiable",
        "selector output minimally unsatisfiable",
        "edge-minimally 3-uncolorable",
        "vertex-minimally 3-uncolorable",
        "chi-critical",
        "chi-vertex-critical",
    )
    for split in MUS_SPLITS:
        phi = split_mus(split)
        g = cai_meyer_graph(phi, with_vc_vs=False).graph
        desc = lambda: _cnf_text(phi)  # noqa: E731
        checks.guarded("input is minimally unsatisfiable", lambda: is_minimal_unsat(phi).verdict, desc)
        checks.guarded(
            "selector output minimally unsatisfiable",
            lambda: is_minimal_unsat(pw_transform(phi).formula).verdict,
            desc,
        )
        checks.guarded("edge-minimally 3-uncolorable", lambda: is_minimally_k_uncolorable(g, 3, EDGE).verdict, desc)
        checks.guarded("vertex-minimally 3-uncolorable", lambda: is_minimally_k_uncolorable(g, 3, VERTEX).verdict, desc)
        checks.guarded("chi-critical", lambda: is_chi_critical(g, EDGE).verdict, desc)
        checks.guarded("chi-vertex-critical", lambda: is_chi_critical(g, VERTEX).verdict, desc)
    return CriterionResult(3, "criticality-crosschecks", "minimality pipeline", checks.all())


def join_lift_criterion(cfg: VerifyConfig) -> CriterionResult:
    checks = _Checks("edge-minimality preserved by join_lift(G, 4)", "chi(join_lift(G, k)) = chi(G) + k - 3")
    # informational: the same equivalence restricted to graphs without isolated vertices
    restricted = Check("edge-minimality preserved, no isolated vertices")
    for g in small_graphs(cfg.join_lift_vertices):
        lifted = join_lift(g, 4)
        same = (
            is_minimally_k_uncolorable(g, 3, EDGE).verdict
            == is_minimally_k_uncolorable(lifted, 4, EDGE).verdict
        )
        checks["edge-minimality preserved by join_lift(G, 4)"].record(same, lambda: _g6(g))
        if all(g.adjacency):
            restricted.record(same, lambda: _g6(g))
        chi = chromatic_number(g)[0]
        for k in (4, 5):
            checks.guarded(
                "chi(join_lift(G, k)) = chi(G) + k - 3",
                lambda: chromatic_number(join_lift(g, k))[0] == chi + k - 3,
                lambda: f"{_g6(g)} k={k}",
            )
    status = "ok" if restricted.passed else f"FAIL ({restricted.failures} failing)"
    notes = [f"note: {restricted.name}: {restricted.items} checked, {status}"]
    return CriterionResult(4, "criticality-crosschecks", "join lift", checks.all(), notes)


def oracle_criterion(cfg: VerifyConfig) -> CriterionResult:
    checks = _Checks(
        "colorer optimal within budget",
        "subcol agrees with k_colorable",
        "vc_from_vertex_deletion optimal within budget",
        "vc_from_edge_addition optimal within budget",
        "added isolated vertex optimal with 1 query",
        "one_query_chain optimal",
    )
    most = {"colorer": 0, "vc_from_vertex_deletion": 0, "vc_from_edge_addition": 0, "added isolated vertex": 0}
    for g in small_graphs(cfg.corpus.max_vertices):
        desc = lambda: _g6(g)  # noqa: E731
        chi = chromatic_number(g)[0]
        beta = vertex_cover_number(g)
        universal = is_universal_edged(g)

        def run_colorer() -> bool:
            o = NeighborOracle(COLORING, "add-edge", budget=2)
            c = colorer(g, o)
            most["colorer"] = max(most["colorer"], o.queries)
            return is_proper(g, c) and color_count(c) == chi and (o.queries == 0) == universal
        checks.guarded("colorer optimal within budget", run_colorer, desc)

        if universal:
            for k in range(1, cfg.subcol_max_k + 1):
                checks.guarded(
                    "subcol agrees with k_colorable",
                    lambda: (subcol(g, k) is None) == (k_colorable(g, k) is None),
                    lambda: f"{_g6(g)} k={k}",
                )

        for name, algo, kind in (
            ("vc_from_vertex_deletion", vc_from_vertex_deletion, "delete-vertex"),
            ("vc_from_edge_addition", vc_from_edge_addition, "add-edge"),
        ):
            def run_vc() -> bool:
                o = NeighborOracle(VERTEX_COVER, kind, budget=2)
                c = algo(g, o)
                most[name] = max(most[name], o.queries)
                return is_vertex_cover(g, c) and len(c) == beta
            checks.guarded(f"{name} optimal within budget", run_vc, desc)

        for problem in (COLORING, VERTEX_COVER):
            def run_iso() -> bool:
                o = NeighborOracle(problem, "add-vertex", budget=1)
                s = solve_by_added_isolated_vertex(g, problem, o)
                most["added isolated vertex"] = max(most["added isolated vertex"], o.queries)
                if problem == COLORING:
                    return is_proper(g, s) and color_count(s) == chi
                return is_vertex_cover(g, s) and len(s) == beta
            checks.guarded("added isolated vertex optimal with 1 query", run_iso, lambda: f"{_g6(g)} {problem}")

        if g.vertex_count <= cfg.chain_vertices:
            for problem, kind in ((COLORING, "add-edge"), (VERTEX_COVER, "delete-vertex"), (VERTEX_COVER, "add-edge")):
                def run_chain() -> bool:
                    s = one_query_chain(g, problem, kind).solution
                    if problem == COLORING:
                        return is_proper(g, s) and color_count(s) == chi
                    return is_vertex_cover(g, s) and len(s) == beta
                checks.guarded("one_query_chain optimal", run_chain, lambda: f"{_g6(g)} {problem}/{kind}")
    notes = ["max queries: " + ", ".join(f"{k}={v}" for k, v in most.items())]
    return CriterionResult(5, "oracle-budgets", "oracle algorithms", checks.all(), notes)


def vc_witness_criterion(cfg: VerifyConfig) -> CriterionResult:
    cc = cfg.corpus
    corpus = e3cnf_corpus(cfg.formulas, cc.seed, cc.max_clauses, cc.max_variables)[: cfg.vc_formulas]
    checks = _Checks("beta = n + 2m iff f(phi) SAT", "triangle witness is an optimal cover of g - T")
    for phi in corpus:
        red = f_vc_reduction(phi)
        g = red.graph
        checks.guarded(
            "beta = n + 2m iff f(phi) SAT",
            lambda: (vertex_cover_number(g) == red.k) == (sat_solve(red.formula) is not None),
            lambda: _cnf_text(phi),
        )
        for j in range(red.formula.num_clauses):
            tri = red.triangle(j)

            def tri_ok() -> bool:
                h = g.without_vertices(tri)
                cover = f_triangle_opt(phi, j)
                return is_vertex_cover(h, cover) and len(cover) == len(min_vertex_cover(h))
            checks.guarded("triangle witness is an optimal cover of g - T", tri_ok, lambda: f"{_cnf_text(phi)} triangle {j}")
    return CriterionResult(6, "vc-witness", "vertex-cover reduction", checks.all())


def theta_criterion(cfg: VerifyConfig) -> CriterionResult:
    checks = _Checks("beta(F) = (n + 1) + min(beta(G), beta(H))", "F vertex-critical iff beta(G) = beta(H)")
    for g, h in graph_pairs(cfg.graph_pairs, cfg.corpus.seed, 5):
        f = theta_gadget(g, h)
        bg, bh = vertex_cover_number(g), vertex_cover_number(h)
        n = max(g.vertex_count, h.vertex_count)
        desc = lambda: f"{_g6(g)} {_g6(h)}"  # noqa: E731
        checks.guarded(
            "beta(F) = (n + 1) + min(beta(G), beta(H))",
            lambda: vertex_cover_number(f) == n + 1 + min(bg, bh),
            desc,
        )
        checks.guarded(
            "F vertex-critical iff beta(G) = beta(H)",
            lambda: is_beta_vertex_critical(f).verdict == (bg == bh),
            desc,
        )
    return CriterionResult(7, "vc-witness", "join gadget", checks.all())


CRITERIA: dict[int, Callable[[VerifyConfig], CriterionResult]] = {
    1: sat_witness_criterion,
    2: coloring_witness_criterion,
    3: minimality_criterion,
    4: join_lift_criterion,
    5: oracle_criterion,
    6: vc_witness_criterion,
    7: theta_criterion,
}

SUITES: dict[str, tuple[int, ...]] = {
    "sat-witness": (1,),
    "coloring-witness": (2,),
    "criticality-crosschecks": (3, 4),
    "oracle-budgets": (5,),
    "vc-witness": (6, 7),
    "all": (1, 2, 3, 4, 5, 6, 7),
}


def run_suite(suite: str, cfg: VerifyConfig,
              progress: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    for number in SUITES[suite]:
        res = CRITERIA[number](cfg)
        if progress is not None:
            progress(res)
        results.append(res)
    return results


def render_report(suite: str, cfg: VerifyConfig, results: list[CriterionResult]) -> str:
    cc = cfg.corpus
    lines = [
        f"neighborly verify {suite} seed={cc.seed} max_clauses={cc.max_clauses} "
        f"max_variables={cc.max_variables} max_vertices={cc.max_vertices}"
    ]
    for r in results:
        lines.extend(r.lines())
    passed = sum(r.passed for r in results)
    verdict = "PASS" if passed == len(results) else "FAIL"
    lines.append(f"summary: {verdict} {passed}/{len(results)} criteria")
    return "\n".join(lines) + "\n"
