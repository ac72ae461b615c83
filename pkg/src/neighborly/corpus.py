"""Seeded instance generators for the verification suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import networkx as nx

from .cnf import CnfFormula
from .graph import Graph


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 42
    max_vertices: int = 7
    max_clauses: int = 4
    max_variables: int = 6


def random_e3cnf(rng: random.Random, n: int, m: int) -> CnfFormula:
    """Uniform E3CNF over ``n`` variables with ``m`` distinct clauses."""
    if n < 3:
        raise ValueError("E3CNF needs at least three variables")
    seen: set[frozenset[int]] = set()
    clauses = []
    while len(clauses) < m:
        vs = rng.sample(range(1, n + 1), 3)
        clause = [v if rng.random() < 0.5 else -v for v in vs]
        key = frozenset(clause)
        if key not in seen:
            seen.add(key)
            clauses.append(clause)
    return CnfFormula.from_ints(clauses, n)


def e3cnf_corpus(count: int, seed: int, max_clauses: int = 4,
                 max_variables: int = 6) -> list[CnfFormula]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(3, max_variables)
        m = rng.randint(1, max_clauses)
        out.append(random_e3cnf(rng, n, m))
    return out


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def graph_pairs(count: int, seed: int, max_vertices: int = 5) -> list[tuple[Graph, Graph]]:
    rng = random.Random(seed)
    return [
        (random_graph(rng, rng.randint(1, max_vertices)), random_graph(rng, rng.randint(1, max_vertices)))
        for _ in range(count)
    ]


@lru_cache(maxsize=8)
def small_graphs(max_vertices: int) -> tuple[Graph, ...]:
    """All graphs on 1 to ``max_vertices`` (at most 7) vertices up to isomorphism."""
    if max_vertices > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    return tuple(
        Graph.from_edges(h.number_of_nodes(), h.edges())
        for h in nx.graph_atlas_g()
        if 1 <= h.number_of_nodes() <= max_vertices
    )


def split_mus(splitters: tuple[int, ...]) -> CnfFormula:
    """Minimally unsatisfiable E3CNF from the four 2-clauses over ``x1, x2``.

    Clause ``i`` is split on variable ``splitters[i]`` (at least 3) into
    copies with the splitter positive and negative; splitting a clause of a
    minimally unsatisfiable formula on a fresh variable keeps it minimally
    unsatisfiable.
    """
    base = [[s1, s2] for s1, s2 in product((1, -1), (2, -2))]
    if len(splitters) != len(base) or min(splitters) < 3:
        raise ValueError("need four splitter variables numbered 3 or higher")
    clauses = [c + [sign * z] for c, z in zip(base, splitters) for sign in (1, -1)]
    return CnfFormula.from_ints(clauses, max(splitters))


MUS_SPLITS: tuple[tuple[int, ...], ...] = (
    (3, 3, 3, 3),
    (3, 3, 4, 4),
    (3, 4, 3, 4),
    (3, 4, 4, 3),
    (3, 3, 3, 4),
    (3, 4, 5, 6),
)
