from __future__ import annotations

import json
from itertools import combinations

import pytest
from hypothesis import given

from neighborly.cnf import CnfFormula
from neighborly.corpus import small_graphs, split_mus
from neighborly.criticality import (
    EDGE,
    VERTEX,
    find_beta_stable_graphs,
    graph_neighbors,
    is_beta_critical,
    is_beta_stable,
    is_beta_vertex_critical,
    is_chi_critical,
    is_minimal_unsat,
    is_minimally_k_uncolorable,
)
from neighborly.graph import Graph, disjoint_union, edgeless, make_clique, make_cycle, make_path
from neighborly.reductions import cai_meyer_graph, pw_transform
from oracles import brute_chromatic, brute_k_colorable, brute_vertex_cover
from strategies import graphs


def clique_minus_edge(m: int) -> Graph:
    k = make_clique(m)
    return Graph(m, k.edges - {(0, 1)})


def test_odd_cycle_is_chi_critical_both_ways():
    assert is_chi_critical(make_cycle(5), EDGE)
    assert is_chi_critical(make_cycle(5), VERTEX)


def test_even_cycle_is_not_edge_critical():
    r = is_chi_critical(make_path(4), EDGE)
    assert not r and r.certificate == (0, 1)


def test_clique_is_beta_critical():
    assert is_beta_critical(make_clique(4))
    assert is_beta_vertex_critical(make_clique(4))


def test_path_is_not_beta_critical():
    r = is_beta_critical(make_path(3))
    assert not r and r.base == 1


def test_degenerate_inputs():
    r = is_chi_critical(edgeless(3), EDGE)
    assert r.degenerate and not r.verdict
    assert is_chi_critical(Graph(0), VERTEX).degenerate
    assert is_beta_critical(edgeless(2), EDGE).degenerate
    assert is_beta_critical(Graph(1), VERTEX).degenerate
    assert not is_chi_critical(make_clique(2)).degenerate


def test_bad_mode():
    with pytest.raises(ValueError):
        is_chi_critical(make_path(3), "clause")
    with pytest.raises(ValueError):
        list(graph_neighbors(make_path(3), "clause"))
    with pytest.raises(ValueError):
        is_minimally_k_uncolorable(make_path(3), 0)


def test_minimally_uncolorable():
    assert is_minimally_k_uncolorable(make_cycle(5), 2, EDGE)
    assert is_minimally_k_uncolorable(make_clique(4), 3, VERTEX)
    r = is_minimally_k_uncolorable(make_cycle(4), 2)
    assert not r and r.certificate == ()


def test_report_json_shape():
    obj = json.loads(is_chi_critical(make_cycle(3)).to_json())
    assert set(obj) == {"notion", "base", "neighbors", "verdict", "certificate", "degenerate"}
    assert obj["base"] == 3 and len(obj["neighbors"]) == 3
    assert obj["neighbors"][0] == {"neighbor": [0, 1], "value": 2}


@given(graphs(max_n=6))
def test_recognizers_match_brute_force(g):
    n = g.vertex_count
    chi = brute_chromatic(n, g.edges)
    edge_vals = [brute_chromatic(n, g.edges - {e}) for e in g.sorted_edges]
    r = is_chi_critical(g, EDGE)
    assert [nv.value for nv in r.neighbors] == edge_vals
    assert r.verdict == (bool(g.edges) and all(v < chi for v in edge_vals))
    beta = brute_vertex_cover(n, g.edges)
    assert is_beta_critical(g).verdict == (
        bool(g.edges) and all(brute_vertex_cover(n, g.edges - {e}) < beta for e in g.edges)
    )


def test_edge_minimal_implies_vertex_minimal():
    for g in small_graphs(6):
        for k in (2, 3):
            if g.edges and is_minimally_k_uncolorable(g, k, EDGE):
                # isolated vertices break the implication, so only connected ones count
                if all(g.adjacency[v] for v in g.vertices):
                    assert is_minimally_k_uncolorable(g, k, VERTEX)
                assert not brute_k_colorable(g.vertex_count, g.edges, k)


def test_minimal_unsat():
    assert is_minimal_unsat(CnfFormula.from_ints([[1], [-1]]))
    r = is_minimal_unsat(CnfFormula.from_ints([[1], [-1], [2]]))
    assert not r and r.certificate == (2,)
    r = is_minimal_unsat(CnfFormula.from_ints([[1, 2]]))
    assert not r and r.certificate == ()


@pytest.mark.parametrize("splitters", [(3, 3, 3, 3), (3, 4, 5, 6)])
def test_split_mus_formulas(splitters):
    phi = split_mus(splitters)
    assert phi.is_e3cnf() and is_minimal_unsat(phi)


def test_gadget_graph_of_mus_is_four_critical():
    h = cai_meyer_graph(split_mus((3, 3, 3, 3)), with_vc_vs=False).graph
    assert is_chi_critical(h, EDGE)
    assert is_minimally_k_uncolorable(h, 3, EDGE)


def test_satisfiable_pw_output_is_not_minimal_unsat():
    out = pw_transform(CnfFormula.from_ints([[1, 2], [-1, 2]])).formula
    r = is_minimal_unsat(out)
    assert not r and r.base is True


# -- beta-stable catalog -----------------------------------------------------------


def test_beta_stable_examples():
    assert is_beta_stable(make_path(3))
    assert not is_beta_stable(make_clique(3))
    assert not is_beta_stable(edgeless(4))
    assert not is_beta_stable(disjoint_union(make_clique(3), make_clique(3)))
    for m in (3, 4, 5):
        assert is_beta_stable(clique_minus_edge(m))
    assert is_beta_stable(disjoint_union(clique_minus_edge(4), clique_minus_edge(3)))


def test_catalog():
    found = find_beta_stable_graphs(small_graphs(4))
    # P3, P3 plus an isolated vertex, the claw, C4 and K4 minus an edge
    assert [(g.vertex_count, len(g.edges)) for g in found] == [(3, 2), (4, 2), (4, 3), (4, 4), (4, 5)]
    assert all(is_beta_stable(g) for g in found)
    with pytest.raises(ValueError):
        find_beta_stable_graphs([edgeless(9)])


@given(graphs(max_n=6))
def test_beta_stable_matches_definition(g):
    n = g.vertex_count
    beta = brute_vertex_cover(n, g.edges)
    expected = bool(g.edges) and all(brute_vertex_cover(n, g.edges - {e}) == beta for e in g.edges)
    assert is_beta_stable(g) == expected
