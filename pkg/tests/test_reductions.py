from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings

from neighborly.cnf import CnfFormula, Literal, evaluate
from neighborly.corpus import split_mus
from neighborly.criticality import is_minimal_unsat
from neighborly.errors import (
    EmptyInput,
    KTooSmall,
    NotATriangle,
    NotE3Cnf,
    NotSatisfying,
    Tautology,
    TooFewVariables,
    WitnessError,
)
from neighborly.graph import Graph, bipartition, edgeless, enumerate_triangles, make_clique, make_cycle, make_path
from neighborly.reductions import (
    cai_meyer_graph,
    coloring_from_assignment,
    f_clause_trace,
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
    vc_reduction,
    vc_triangle_opt,
)
from neighborly.reductions.coloring import C, T
from neighborly.solvers import (
    chromatic_number,
    is_proper,
    is_vertex_cover,
    k_colorable,
    min_vertex_cover,
    sat_solve,
    vertex_cover_number,
)
from oracles import brute_chromatic, brute_sat, brute_vertex_cover
from strategies import cnfs, e3cnfs


def F(clauses, n=None):
    return CnfFormula.from_ints(clauses, n)


TWO = F([[1, 2, 3], [-1, 2, -3]])


# -- selector construction ------------------------------------------------------


def test_pw_clause_count():
    out = pw_transform(TWO)
    assert out.formula.num_clauses == 2 + 6 + 1
    assert out.formula.variable_count == 5
    assert out.selector_vars == (3, 4)


def test_pw_clause_order():
    kinds = [k.kind for k in pw_transform(F([[1, 2], [-1], [2, 3]])).clause_kind]
    assert kinds == ["main"] * 3 + ["blocker"] * 5 + ["pair"] * 3


def test_pw_pair_witness():
    phi = F([[1, 2, 3], [-1, 2, -3], [1, -2, 3]])
    out = pw_transform(phi)
    for c, kind in enumerate(out.clause_kind):
        if kind.kind != "pair":
            continue
        a = pw_witness(phi, c)
        ys = [a[y] for y in out.selector_vars]
        assert ys == [k in (kind.i, kind.j) for k in range(3)]
        assert not any(a[:3])


def test_pw_of_unsat_input_is_minimally_unsat():
    phi = F([[1], [-1, 2], [-2, 3], [-3]])
    out = pw_transform(phi).formula
    report = is_minimal_unsat(out)
    assert report.verdict
    assert not brute_sat(out.variable_count, out.to_ints())


@given(cnfs(max_vars=5, max_clauses=5))
def test_pw_witnesses(phi):
    if phi.variable_count < 2 or any(any(-l in c for l in c) for c in phi.clauses):
        return
    out = pw_transform(phi)
    for c in range(out.formula.num_clauses):
        assert evaluate(out.formula.without_clause(c), pw_witness(phi, c))
    assert (sat_solve(out.formula) is None) == (sat_solve(phi) is None)


def test_pw_preconditions():
    with pytest.raises(TooFewVariables):
        pw_transform(F([[1], [-1]]))
    with pytest.raises(Tautology):
        pw_transform(F([[1, -1], [2]]))
    with pytest.raises(EmptyInput):
        pw_transform(CnfFormula(3, ()))


# -- the full clause-side reduction ---------------------------------------------


def test_f_witnesses_on_two_clause_example():
    out = f_transform(TWO)
    assert out.is_e3cnf()
    for c in range(out.num_clauses):
        assert evaluate(out.without_clause(c), sat_witness(TWO, c))


def test_f_trace_covers_input_clauses():
    trace = f_clause_trace(TWO)
    assert {t for t in trace if t is not None} <= set(range(pw_transform(TWO).formula.num_clauses))


def test_f_single_clause_input():
    phi = F([[1, 2, 3]])
    out = f_transform(phi)
    assert out.is_e3cnf()
    assert sat_solve(out) is not None


def test_f_requires_e3cnf():
    with pytest.raises(NotE3Cnf):
        f_transform(F([[1, 2]]))


@settings(max_examples=12)
@given(e3cnfs(max_clauses=3))
def test_f_properties(phi):
    out = f_transform(phi)
    assert out.is_e3cnf()
    assert (sat_solve(out) is None) == (sat_solve(phi) is None)
    for c in range(out.num_clauses):
        assert evaluate(out.without_clause(c), sat_witness(phi, c))


# -- gadget graphs ------------------------------------------------------------------


def test_cai_meyer_size():
    cm = cai_meyer_graph(F([[1, 2, 3]]))
    assert cm.graph.vertex_count == 2 + 6 + 9
    assert cm.graph.has_edge(cm.vc, cm.vs)
    assert not cai_meyer_graph(F([[1, 2, 3]]), with_vc_vs=False).graph.has_edge(0, 1)
    assert str(cm.graph.role(0)) == "vc"


@given(e3cnfs(max_clauses=4))
def test_coloring_from_assignment_is_proper(phi):
    cm = cai_meyer_graph(phi)
    a = sat_solve(phi)
    col = coloring_from_assignment(cm, a)
    assert is_proper(cm.graph, col) and set(col) <= {1, 2, 3}
    for v in range(phi.variable_count):
        assert col[cm.literal_vertex(Literal(v, True))] == (T if a[v] else 2)


def test_coloring_from_assignment_rejects_non_satisfying():
    cm = cai_meyer_graph(TWO)
    with pytest.raises(NotSatisfying):
        coloring_from_assignment(cm, (True, False, True))


def test_unsat_formula_gives_uncolorable_graph():
    cm = cai_meyer_graph(split_mus((3, 3, 3, 3)))
    assert k_colorable(cm.graph, 3) is None
    h = cai_meyer_graph(split_mus((3, 3, 3, 3)), with_vc_vs=False).graph
    assert chromatic_number(h)[0] == 4


@pytest.mark.parametrize("phi", [TWO, F([[1, 2, 3]]), F([[1, -2, 4], [2, 3, -4], [-1, -3, 4]])])
def test_g_is_three_chromatic_with_triangles(phi):
    g = g_transform(phi).graph
    assert enumerate_triangles(g)
    assert chromatic_number(g)[0] == 3


def _disjoint_triangles(g):
    out, used = [], set()
    for t in enumerate_triangles(g):
        if used.isdisjoint(t):
            out.append(set(t))
            used.update(t)
    return out[:2]


@pytest.mark.parametrize("phi", [TWO, F([[1, 2, 3]]), F([[1, 2, 3], [-1, -2, -3], [1, -2, 3]])])
def test_g_opt_on_every_edge_and_vertex(phi):
    cm = g_transform(phi)
    g = cm.graph
    tris = _disjoint_triangles(g)
    for e in g.sorted_edges:
        col = g_opt(phi, e)
        h = g.with_edges(removed=[e])
        assert is_proper(h, col) and set(col) <= {1, 2, 3}
        assert any(not set(e) <= t for t in tris)
    for v in g.vertices:
        col = g_opt_vertex(phi, v)
        assert is_proper(g.without_vertices([v]), col)


def test_g_opt_variable_edge_makes_positive_literal_true():
    cm = g_transform(TWO)
    for i in range(cm.n):
        u, v = cm.literal_vertex(Literal(i, True)), cm.literal_vertex(Literal(i, False))
        assert g_opt(TWO, (u, v))[u] == T


def test_g_opt_on_unsatisfied_clause_triangle_edge():
    # find a triangle edge whose clause the base witness leaves unsatisfied
    cm = g_transform(TWO)
    g = cm.graph
    hits = 0
    for k in range(cm.m):
        _, _, t = cm.gadget(k)
        for e in combinations(t, 2):
            col = g_opt(TWO, e)
            if col[e[0]] == col[e[1]]:
                hits += 1
                assert sorted(col[x] for x in t) == [T, T, C]
            assert is_proper(g.with_edges(removed=[e]), col)
    assert hits > 0


def test_join_lift():
    assert chromatic_number(join_lift(make_cycle(5), 4))[0] == 4
    assert join_lift(make_clique(3), 4) == make_clique(4)
    with pytest.raises(KTooSmall):
        join_lift(make_cycle(5), 3)


# -- vertex cover ----------------------------------------------------------------------


def test_vc_reduction_size():
    red = vc_reduction(F([[1, 2, 3]]))
    assert red.graph.vertex_count == 9 and red.k == 5
    assert vertex_cover_number(red.graph) == 5 == brute_vertex_cover(9, red.graph.edges)


@given(e3cnfs(max_vars=4, max_clauses=4))
def test_vc_reduction_bound(phi):
    red = vc_reduction(phi)
    assert (vertex_cover_number(red.graph) == red.k) == (sat_solve(phi) is not None)


def test_vc_reduction_on_unsat_formula():
    red = vc_reduction(split_mus((3, 3, 3, 3)))
    assert vertex_cover_number(red.graph) > red.k


@given(e3cnfs(max_vars=4, max_clauses=4))
def test_vc_triangle_opt(phi):
    red = vc_reduction(phi)
    for j in range(phi.num_clauses):
        tri = red.triangle(j)
        h = red.graph.without_vertices(tri)
        cover = vc_triangle_opt(red, tri)
        assert is_vertex_cover(h, cover)
        assert len(cover) == phi.variable_count + 2 * (phi.num_clauses - 1) == len(min_vertex_cover(h))


def test_vc_triangle_errors():
    red = vc_reduction(TWO)
    with pytest.raises(NotATriangle):
        red.clause_of((0, 1, 2))
    with pytest.raises(WitnessError):
        vc_triangle_opt(red, red.triangle(1), witness=(False, False, False))


def test_f_triangle_opt_is_optimal():
    red = f_vc_reduction(TWO)
    for j in range(0, red.formula.num_clauses, 7):
        h = red.graph.without_vertices(red.triangle(j))
        cover = f_triangle_opt(TWO, j)
        assert is_vertex_cover(h, cover) and len(cover) == len(min_vertex_cover(h))


def test_theta_gadget_examples():
    k3, k2 = make_clique(3), make_clique(2)
    f = theta_gadget(k3, k3)
    assert f.vertex_count == 8
    assert vertex_cover_number(f) == 4 + 2
    assert vertex_cover_number(theta_gadget(k3, k2)) == 4 + 1
    with pytest.raises(EmptyInput):
        theta_gadget(Graph(0), k3)


@given(e3cnfs(max_vars=3, max_clauses=2))
def test_theta_formula_on_gadget_graphs(phi):
    g = vc_reduction(phi).graph.without_vertices(range(6, vc_reduction(phi).graph.vertex_count))
    h = make_path(3)
    f = theta_gadget(g, h)
    n = max(g.vertex_count, h.vertex_count)
    expected = n + 1 + min(brute_vertex_cover(g.vertex_count, g.edges), 1)
    assert vertex_cover_number(f) == expected
