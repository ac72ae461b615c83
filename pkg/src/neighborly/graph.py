"""Simple undirected graphs, local modifications and structural predicates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import InvalidModification, NotAnEdge

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, order=True)
class Role:
    """Tag naming what a vertex stands for in a constructed graph.

    ``kind`` is one of ``vc``, ``vs``, ``pos``, ``neg``, ``a``, ``b``, ``t``
    or ``plain``. Literal roles carry the variable in ``index``; gadget roles
    carry the clause in ``index`` and the literal position in ``pos``.
    """

    kind: str
    index: int | None = None
    pos: int | None = None

    def __str__(self) -> str:
        parts = [self.kind]
        if self.index is not None:
            parts.append(str(self.index))
        if self.pos is not None:
            parts.append(str(self.pos))
        return ":".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Role":
        kind, *rest = text.split(":")
        nums = [int(x) for x in rest]
        return cls(kind, *nums)


VC = Role("vc")
VS = Role("vs")
PLAIN = Role("plain")


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[Edge] = frozenset()
    roles: tuple[Role, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex_count must be non-negative")
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            clean.add(norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(clean))
        if self.roles is not None:
            roles = tuple(self.roles)
            if len(roles) != n:
                raise ValueError("roles must tag every vertex exactly once")
            object.__setattr__(self, "roles", roles)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Sequence[int]], roles: Sequence[Role] | None = None
    ) -> "Graph":
        return cls(n, frozenset(norm_edge(u, v) for u, v in edges), tuple(roles) if roles else None)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def role(self, v: int) -> Role:
        return self.roles[v] if self.roles is not None else PLAIN

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``vertices``, densely re-indexed.

        Returns the subgraph and the tuple mapping new ids to old ids.
        """
        keep = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        roles = tuple(self.role(v) for v in keep) if self.roles is not None else None
        return Graph.from_edges(len(keep), edges, roles), keep

    def without_vertices(self, removed: Iterable[int]) -> "Graph":
        gone = set(removed)
        return self.induced(v for v in self.vertices if v not in gone)[0]

    def with_edges(self, added: Iterable[Edge] = (), removed: Iterable[Edge] = ()) -> "Graph":
        edges = set(self.edges)
        edges.difference_update(norm_edge(*e) for e in removed)
        edges.update(norm_edge(*e) for e in added)
        return Graph(self.vertex_count, frozenset(edges), self.roles)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


# -- local modifications ---------------------------------------------------


@dataclass(frozen=True)
class AddVertex:
    neighbors: frozenset[int] = frozenset()
    kind = "add-vertex"


@dataclass(frozen=True)
class DeleteVertex:
    v: int
    kind = "delete-vertex"


@dataclass(frozen=True)
class AddEdge:
    u: int
    v: int
    kind = "add-edge"


@dataclass(frozen=True)
class DeleteEdge:
    u: int
    v: int
    kind = "delete-edge"


@dataclass(frozen=True)
class DeleteTriangle:
    u: int
    v: int
    w: int
    kind = "delete-triangle"


@dataclass(frozen=True)
class DeleteClause:
    index: int
    kind = "delete-clause"


Modification = AddVertex | DeleteVertex | AddEdge | DeleteEdge | DeleteTriangle | DeleteClause


def describe(m: Modification) -> dict:
    """JSON-ready description of a modification."""
    if isinstance(m, AddVertex):
        return {"kind": m.kind, "neighbors": sorted(m.neighbors)}
    if isinstance(m, DeleteVertex):
        return {"kind": m.kind, "vertex": m.v}
    if isinstance(m, (AddEdge, DeleteEdge)):
        return {"kind": m.kind, "edge": list(norm_edge(m.u, m.v))}
    if isinstance(m, DeleteTriangle):
        return {"kind": m.kind, "triangle": sorted((m.u, m.v, m.w))}
    return {"kind": m.kind, "clause": m.index}


def apply_modification(g: Graph, m: Modification) -> Graph:
    """Return the neighbor of ``g`` produced by ``m``.

    Vertex deletions re-index densely: ids above a deleted vertex shift down
    and role tags move with their vertices.
    """
    n = g.vertex_count
    if isinstance(m, AddVertex):
        if any(not 0 <= u < n for u in m.neighbors):
            raise InvalidModification(f"neighbor set {sorted(m.neighbors)} out of range")
        roles = g.roles + (PLAIN,) if g.roles is not None else None
        return Graph(n + 1, g.edges | {(u, n) for u in m.neighbors}, roles)
    if isinstance(m, DeleteVertex):
        if not 0 <= m.v < n:
            raise InvalidModification(f"no vertex {m.v}")
        return g.without_vertices([m.v])
    if isinstance(m, AddEdge):
        if m.u == m.v or not (0 <= m.u < n and 0 <= m.v < n):
            raise InvalidModification(f"cannot add edge ({m.u}, {m.v})")
        if g.has_edge(m.u, m.v):
            raise InvalidModification(f"edge ({m.u}, {m.v}) already present")
        return g.with_edges(added=[(m.u, m.v)])
    if isinstance(m, DeleteEdge):
        if not g.has_edge(m.u, m.v):
            raise InvalidModification(f"no edge ({m.u}, {m.v})")
        return g.with_edges(removed=[(m.u, m.v)])
    if isinstance(m, DeleteTriangle):
        a, b, c = m.u, m.v, m.w
        if not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
            raise InvalidModification(f"({a}, {b}, {c}) is not a triangle")
        return g.without_vertices([a, b, c])
    raise InvalidModification(f"{type(m).__name__} does not apply to graphs")


def reindex_after_deletion(removed: Iterable[int], v: int) -> int:
    """New id of surviving vertex ``v`` once ``removed`` are deleted."""
    return v - sum(1 for r in removed if r < v)


# -- predicates and small constructions ------------------------------------


def neighborhoods(g: Graph, x: int) -> tuple[frozenset[int], frozenset[int]]:
    if not 0 <= x < g.vertex_count:
        raise ValueError(f"no vertex {x}")
    open_ = g.adjacency[x]
    return open_, open_ | {x}


def is_universal_edge(g: Graph, u: int, v: int) -> bool:
    if not g.has_edge(u, v):
        raise NotAnEdge((u, v))
    adj = g.adjacency
    return len(adj[u] | adj[v]) == g.vertex_count


def is_universal_edged(g: Graph) -> bool:
    return all(is_universal_edge(g, u, v) for u, v in g.edges)


def universal_vertices(g: Graph) -> list[int]:
    n = g.vertex_count
    return [v for v in g.vertices if len(g.adjacency[v]) == n - 1]


def bipartition(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-coloring by breadth-first layering, or ``None`` on an odd cycle.

    Each component's lowest vertex lands in the first part, so an edgeless
    graph puts everything in the first part.
    """
    side = [-1] * g.vertex_count
    adj = g.adjacency
    for s in g.vertices:
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return None
    a = frozenset(v for v in g.vertices if side[v] == 0)
    b = frozenset(v for v in g.vertices if side[v] == 1)
    return a, b


def graph_join(g1: Graph, g2: Graph) -> Graph:
    n1 = g1.vertex_count
    edges = set(g1.edges)
    edges.update((u + n1, v + n1) for u, v in g2.edges)
    edges.update((u, n1 + w) for u in g1.vertices for w in g2.vertices)
    roles = None
    if g1.roles is not None or g2.roles is not None:
        roles = tuple(g1.role(v) for v in g1.vertices) + tuple(g2.role(v) for v in g2.vertices)
    return Graph(n1 + g2.vertex_count, frozenset(edges), roles)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n1 = g1.vertex_count
    edges = set(g1.edges)
    edges.update((u + n1, v + n1) for u, v in g2.edges)
    return Graph(n1 + g2.vertex_count, frozenset(edges))


def make_clique(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Graph(n, frozenset(combinations(range(n), 2)))


def make_cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def edgeless(n: int) -> Graph:
    return Graph(n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def enumerate_triangles(g: Graph) -> list[tuple[int, int, int]]:
    adj = g.adjacency
    out = []
    for u, v in g.sorted_edges:
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                out.append((u, v, w))
    return out


def complement(g: Graph) -> Graph:
    n = g.vertex_count
    return Graph(n, frozenset(e for e in combinations(range(n), 2) if e not in g.edges))


def relabel_roles(g: Graph, roles: Mapping[int, Role]) -> Graph:
    tags = tuple(roles.get(v, PLAIN) for v in g.vertices)
    return Graph(g.vertex_count, g.edges, tags)
