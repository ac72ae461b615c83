"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from neighborly.cnf import CnfFormula
from neighborly.graph import Graph


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def cnfs(draw, max_vars: int = 6, max_clauses: int = 6, max_width: int = 4) -> CnfFormula:
    n = draw(st.integers(1, max_vars))
    lits = st.integers(1, n).flatmap(lambda v: st.sampled_from((v, -v)))
    clauses = draw(st.lists(st.lists(lits, min_size=1, max_size=max_width), min_size=1, max_size=max_clauses))
    return CnfFormula.from_ints(clauses, n)


@st.composite
def e3cnfs(draw, min_vars: int = 3, max_vars: int = 6, max_clauses: int = 4) -> CnfFormula:
    n = draw(st.integers(min_vars, max_vars))
    m = draw(st.integers(1, max_clauses))
    clauses = []
    for _ in range(m):
        vs = draw(st.lists(st.integers(1, n), min_size=3, max_size=3, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=3, max_size=3))
        clauses.append([v if s else -v for v, s in zip(vs, signs)])
    return CnfFormula.from_ints(clauses, n)
