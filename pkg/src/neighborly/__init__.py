"""Optimization under the neighbor-oracle model: witnessed reductions, exact
solvers, oracle algorithms and criticality recognizers."""

from .cnf import CnfFormula, Literal, evaluate, from_dimacs_cnf, to_dimacs_cnf
from .criticality import (
    CriticalityReport,
    find_beta_stable_graphs,
    is_beta_critical,
    is_beta_vertex_critical,
    is_chi_critical,
    is_minimal_unsat,
    is_minimally_k_uncolorable,
)
from .errors import NeighborlyError
from .graph import Graph
from .graph_io import from_graph6, load_graphs, to_graph6
from .oracle import (
    NeighborOracle,
    colorer,
    one_query_chain,
    solve_by_added_isolated_vertex,
    subcol,
    vc_from_edge_addition,
    vc_from_vertex_deletion,
)
from .solvers import chromatic_number, k_colorable, min_vertex_cover, sat_solve

__all__ = [
    "CnfFormula",
    "CriticalityReport",
    "Graph",
    "Literal",
    "NeighborOracle",
    "NeighborlyError",
    "chromatic_number",
    "colorer",
    "evaluate",
    "find_beta_stable_graphs",
    "from_dimacs_cnf",
    "from_graph6",
    "is_beta_critical",
    "is_beta_vertex_critical",
    "is_chi_critical",
    "is_minimal_unsat",
    "is_minimally_k_uncolorable",
    "k_colorable",
    "load_graphs",
    "min_vertex_cover",
    "one_query_chain",
    "sat_solve",
    "solve_by_added_isolated_vertex",
    "subcol",
    "to_dimacs_cnf",
    "to_graph6",
    "vc_from_edge_addition",
    "vc_from_vertex_deletion",
]
