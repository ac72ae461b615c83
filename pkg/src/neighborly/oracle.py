"""Neighbor oracles and the algorithms that use them.

A :class:`NeighborOracle` answers optimization queries about instances one
local modification away from a given graph, logging each answer. The
algorithms below turn a bounded number of such answers into an optimal
solution for the graph itself.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Callable, Protocol

from .errors import (
    InvalidModification,
    NoProgress,
    NotUniversalEdged,
    OracleBudgetExceeded,
)
from .graph import (
    AddEdge,
    AddVertex,
    DeleteVertex,
    Graph,
    Modification,
    apply_modification,
    bipartition,
    describe,
    is_universal_edged,
    universal_vertices,
)
from .graph_io import to_graph6
from .solvers import (
    Coloring,
    VertexCover,
    chromatic_number,
    color_count,
    min_vertex_cover,
    normalize_coloring,
)

COLORING = "coloring"
VERTEX_COVER = "vertex-cover"
PROBLEMS = (COLORING, VERTEX_COVER)

Solution = tuple[int, ...]


def digest(g: Graph) -> str:
    return hashlib.sha256(to_graph6(g).encode()).hexdigest()[:16]


def solve_exact(g: Graph, problem: str, time_budget: float | None = None) -> Solution:
    """Optimal solution in witness normal form (the null graph gets the empty coloring)."""
    if problem == COLORING:
        return chromatic_number(g, time_budget)[1] if g.vertex_count else ()
    if problem == VERTEX_COVER:
        return min_vertex_cover(g, time_budget)
    raise ValueError(f"unknown problem {problem!r}")


def solution_size(problem: str, sol: Solution) -> int:
    return color_count(sol) if problem == COLORING else len(sol)


@dataclass(frozen=True)
class TranscriptRecord:
    modification: dict
    instance: str
    answer: Solution
    size: int

    def to_json(self) -> str:
        obj = {
            "modification": self.modification,
            "instance": self.instance,
            "answer": list(self.answer),
            "size": self.size,
        }
        return json.dumps(obj, sort_keys=True)


@dataclass
class NeighborOracle:
    """Exact oracle for one problem under one kind of local modification."""

    problem: str
    modification: str
    budget: int | None = None
    time_budget: float | None = None
    transcript: list[TranscriptRecord] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")

    @property
    def queries(self) -> int:
        return len(self.transcript)

    def query(self, g: Graph, m: Modification) -> Solution:
        """Optimal solution of ``g`` after applying ``m``."""
        if m.kind != self.modification:
            raise InvalidModification(
                f"this oracle answers {self.modification} queries, not {m.kind}"
            )
        if self.budget is not None and self.queries >= self.budget:
            raise OracleBudgetExceeded(f"query budget of {self.budget} spent")
        neighbor = apply_modification(g, m)
        answer = solve_exact(neighbor, self.problem, self.time_budget)
        self.transcript.append(
            TranscriptRecord(describe(m), digest(neighbor), answer, solution_size(self.problem, answer))
        )
        return answer

    def transcript_jsonl(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.transcript)


# -- coloring from edge-added supergraphs ------------------------------------


@dataclass(frozen=True)
class SubcolPartition:
    left: int
    right: int
    L: frozenset[int]
    M: frozenset[int]
    R: frozenset[int]

    @classmethod
    def of(cls, g: Graph, l: int, r: int) -> "SubcolPartition":
        nl, nr = g.adjacency[l], g.adjacency[r]
        part = cls(l, r, nl - nr - {r}, nl & nr, nr - nl - {l})
        part.check(g)
        return part

    def check(self, g: Graph) -> None:
        sets = (self.L, self.M, self.R, frozenset({self.left, self.right}))
        union = frozenset().union(*sets)
        if sum(map(len, sets)) != len(union) or len(union) != g.vertex_count:
            raise NotUniversalEdged(f"edge {(self.left, self.right)} is not universal")
        for side in (self.L, self.R):
            if any(g.has_edge(x, y) for x in side for y in side if x < y):
                raise NotUniversalEdged("a side of the partition is not independent")


def subcol(g: Graph, k: int) -> Coloring | None:
    """A coloring with colors ``1..k`` of a universal-edged graph, or ``None``.

    Recurses on the common neighborhood of the lexicographically smallest
    edge with ``k - 2`` colors.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not is_universal_edged(g):
        raise NotUniversalEdged("subcol needs a universal-edged graph")
    return _subcol(g, k)


def _subcol(g: Graph, k: int) -> Coloring | None:
    if not g.edges:
        return tuple([1] * g.vertex_count)
    if k == 1:
        return None
    parts = bipartition(g)
    if parts is not None:
        return tuple(1 if v in parts[0] else 2 for v in g.vertices)
    if k == 2:
        return None
    l, r = g.sorted_edges[0]
    p = SubcolPartition.of(g, l, r)
    sub, back = g.induced(p.M)
    inner = _subcol(sub, k - 2)
    if inner is None:
        return None
    colors = [0] * g.vertex_count
    for i, v in enumerate(back):
        colors[v] = inner[i]
    for v in p.L | {r}:
        colors[v] = k - 1
    for v in p.R | {l}:
        colors[v] = k
    return tuple(colors)


def colorer(g: Graph, oracle: NeighborOracle) -> Coloring:
    """Optimal coloring from at most two edge-addition queries.

    Uses the first edge ``{u, v}`` and vertex ``x`` adjacent to neither
    (lexicographic scan). With no such pair the graph is universal-edged and
    is colored by :func:`subcol` without queries.
    """
    adj = g.adjacency
    for u, v in g.sorted_edges:
        for x in g.vertices:
            if x in (u, v) or x in adj[u] or x in adj[v]:
                continue
            f1 = oracle.query(g, AddEdge(u, x))
            f2 = oracle.query(g, AddEdge(v, x))
            return f1 if color_count(f1) < color_count(f2) else f2
    k = 1
    while True:
        f = subcol(g, k)
        if f is not None:
            return f
        k += 1


# -- vertex cover from two neighbors ---------------------------------------


def _lift_after_deletion(cover: Solution, v: int) -> list[int]:
    return [u if u < v else u + 1 for u in cover]


def vc_from_vertex_deletion(g: Graph, oracle: NeighborOracle) -> VertexCover:
    """Optimal cover from the two one-vertex-deleted subgraphs at the first edge."""
    if not g.edges:
        return ()
    v1, v2 = g.sorted_edges[0]
    c1 = oracle.query(g, DeleteVertex(v1))
    c2 = oracle.query(g, DeleteVertex(v2))
    if len(c1) <= len(c2):
        return tuple(sorted(_lift_after_deletion(c1, v1) + [v1]))
    return tuple(sorted(_lift_after_deletion(c2, v2) + [v2]))


def _universal_cover(g: Graph) -> VertexCover:
    uni = universal_vertices(g)
    if len(uni) == g.vertex_count:
        # a clique: every vertex is universal but one of them is not needed
        return tuple(uni[:-1])
    return tuple(uni)


def vc_from_edge_addition(g: Graph, oracle: NeighborOracle) -> VertexCover:
    """Optimal cover from two one-edge-added supergraphs.

    Needs an edge whose endpoints are both non-universal; each endpoint gets
    one new edge to its lowest non-neighbor. Otherwise every edge has a
    universal endpoint and the universal vertices are returned (minus one
    when the graph is a clique).
    """
    n = g.vertex_count
    adj = g.adjacency
    uni = set(universal_vertices(g))
    for v1, v2 in g.sorted_edges:
        if v1 in uni or v2 in uni:
            continue
        x1 = next(x for x in range(n) if x != v1 and x not in adj[v1])
        x2 = next(x for x in range(n) if x != v2 and x not in adj[v2])
        c1 = oracle.query(g, AddEdge(v1, x1))
        c2 = oracle.query(g, AddEdge(v2, x2))
        return c1 if len(c1) <= len(c2) else c2
    return _universal_cover(g)


def solve_by_added_isolated_vertex(g: Graph, problem: str, oracle: NeighborOracle) -> Solution:
    """Optimal solution from one query on ``g`` plus an isolated vertex."""
    answer = oracle.query(g, AddVertex(frozenset()))
    n = g.vertex_count
    if problem == COLORING:
        return normalize_coloring(answer[:n])
    return tuple(v for v in answer if v != n)


# -- one-query chains ------------------------------------------------------


class Stepper(Protocol):
    def choose(self, g: Graph) -> Modification | None: ...

    def lift(self, g: Graph, m: Modification, neighbor_solution: Solution) -> Solution: ...


@dataclass(frozen=True)
class TrivialClass:
    name: str
    contains: Callable[[Graph], bool]
    solve: Callable[[Graph], Solution]


@dataclass(frozen=True)
class ChainResult:
    solution: Solution
    modifications: tuple[Modification, ...]
    trivial: Graph

    @property
    def steps(self) -> int:
        return len(self.modifications)


def run_chain(g: Graph, stepper: Stepper, trivial: TrivialClass,
              max_steps: int | None = None) -> ChainResult:
    """Walk single modifications to a trivial instance, then unwind.

    Each unwinding step hands the stepper an optimal solution of the
    neighbor it chose, which is exactly what a one-query algorithm receives.
    """
    limit = max_steps if max_steps is not None else max(1, g.vertex_count ** 2)
    chain = [g]
    mods: list[Modification] = []
    while not trivial.contains(chain[-1]):
        if len(mods) >= limit:
            raise NoProgress(f"no trivial instance within {limit} steps")
        m = stepper.choose(chain[-1])
        if m is None:
            raise NoProgress("stepper found no modification")
        chain.append(apply_modification(chain[-1], m))
        mods.append(m)
    sol = trivial.solve(chain[-1])
    for inst, m in zip(reversed(chain[:-1]), reversed(mods)):
        sol = stepper.lift(inst, m, sol)
    return ChainResult(sol, tuple(mods), chain[-1])


def _nonadjacency_classes(g: Graph) -> list[list[int]] | None:
    """Parts of a complete multipartite graph, or None if ``g`` is not one."""
    adj = g.adjacency
    parts: list[list[int]] = []
    for v in g.vertices:
        for part in parts:
            if part[0] not in adj[v]:
                if any(u in adj[v] for u in part):
                    return None
                part.append(v)
                break
        else:
            parts.append([v])
    for i, p in enumerate(parts):
        for q in parts[i + 1 :]:
            if any(y not in adj[x] for x in p for y in q):
                return None
    return parts


def _color_multipartite(g: Graph) -> Solution:
    parts = _nonadjacency_classes(g)
    colors = [0] * g.vertex_count
    for c, part in enumerate(parts or [], 1):
        for v in part:
            colors[v] = c
    return normalize_coloring(colors)


class ColoringEdgeStepper:
    """Add an absent edge whose endpoints some optimal coloring separates."""

    def choose(self, g: Graph) -> Modification | None:
        if g.vertex_count == 0:
            return None
        f = chromatic_number(g)[1]
        adj = g.adjacency
        for u in g.vertices:
            for x in range(u + 1, g.vertex_count):
                if x not in adj[u] and f[u] != f[x]:
                    return AddEdge(u, x)
        return None

    def lift(self, g: Graph, m: Modification, neighbor_solution: Solution) -> Solution:
        return normalize_coloring(neighbor_solution)


class CoverDeletionStepper:
    """Delete an isolated vertex, or else a vertex of some optimal cover."""

    def choose(self, g: Graph) -> Modification | None:
        if g.vertex_count == 0:
            return None
        iso = [v for v in g.vertices if not g.adjacency[v]]
        if iso:
            return DeleteVertex(iso[0])
        return DeleteVertex(min_vertex_cover(g)[0])

    def lift(self, g: Graph, m: Modification, neighbor_solution: Solution) -> Solution:
        lifted = _lift_after_deletion(neighbor_solution, m.v)
        if g.adjacency[m.v]:
            lifted.append(m.v)
        return tuple(sorted(lifted))


class CoverEdgeStepper:
    """Add an absent edge at a vertex of some optimal cover."""

    def choose(self, g: Graph) -> Modification | None:
        adj = g.adjacency
        for u in min_vertex_cover(g):
            for x in g.vertices:
                if x != u and x not in adj[u]:
                    return AddEdge(u, x)
        return None

    def lift(self, g: Graph, m: Modification, neighbor_solution: Solution) -> Solution:
        return tuple(sorted(neighbor_solution))


def _universal_endpoint_everywhere(g: Graph) -> bool:
    uni = set(universal_vertices(g))
    return all(u in uni or v in uni for u, v in g.edges)


COMPLETE_MULTIPARTITE = TrivialClass(
    "complete multipartite", lambda g: _nonadjacency_classes(g) is not None, _color_multipartite
)
NULL_GRAPH = TrivialClass("null graph", lambda g: g.vertex_count == 0, lambda g: ())
UNIVERSAL_COVERED = TrivialClass(
    "universal endpoint on every edge", _universal_endpoint_everywhere, _universal_cover
)

CHAINS: dict[tuple[str, str], tuple[Callable[[], Stepper], TrivialClass]] = {
    (COLORING, AddEdge.kind): (ColoringEdgeStepper, COMPLETE_MULTIPARTITE),
    (VERTEX_COVER, DeleteVertex.kind): (CoverDeletionStepper, NULL_GRAPH),
    (VERTEX_COVER, AddEdge.kind): (CoverEdgeStepper, UNIVERSAL_COVERED),
}


def one_query_chain(g: Graph, problem: str, modification: str) -> ChainResult:
    """Solve ``g`` by chaining a one-query algorithm down to a trivial instance."""
    try:
        make, trivial = CHAINS[(problem, modification)]
    except KeyError:
        raise ValueError(f"no chain for {problem} under {modification}") from None
    return run_chain(g, make(), trivial)
