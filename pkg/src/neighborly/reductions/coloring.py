"""The clause-gadget 3-coloring reduction and its edge/vertex-deletion witnesses.

Colors are named ``T`` (1), ``F`` (2) and ``C`` (3). Vertex layout is fixed:
``v_c`` = 0, ``v_s`` = 1, then ``x_i`` / ``~x_i`` at ``2 + 2i`` / ``3 + 2i``,
then nine vertices per clause (``a1..a3``, ``b1..b3``, ``t1..t3``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ..cnf import Assignment, CnfFormula, Literal, evaluate
from ..errors import IsolatedVertex, KTooSmall, NotAnEdge, NotSatisfying, WitnessError
from ..graph import Graph, Role, graph_join, make_clique, norm_edge
from ..solvers import Coloring
from .sat import f_transform, sat_witness

T, F, C = 1, 2, 3


@dataclass(frozen=True)
class CaiMeyerGraph:
    graph: Graph
    formula: CnfFormula
    has_vc_vs_edge: bool

    vc = 0
    vs = 1

    @property
    def n(self) -> int:
        return self.formula.variable_count

    @property
    def m(self) -> int:
        return self.formula.num_clauses

    def literal_vertex(self, l: Literal) -> int:
        return 2 + 2 * l.var + (0 if l.positive else 1)

    def gadget(self, k: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        """``(a, b, t)`` vertex triples of clause ``k``."""
        base = 2 + 2 * self.n + 9 * k
        return (
            (base, base + 1, base + 2),
            (base + 3, base + 4, base + 5),
            (base + 6, base + 7, base + 8),
        )

    def clause_literals(self, k: int) -> tuple[Literal, Literal, Literal]:
        return _padded(self.formula.clauses[k])

    def gadget_vertices(self, k: int) -> tuple[int, ...]:
        a, b, t = self.gadget(k)
        return a + b + t


def _padded(clause: Sequence[Literal]) -> tuple[Literal, Literal, Literal]:
    # short clauses repeat their last literal; the gadget semantics are unchanged
    lits = list(clause) + [clause[-1]] * (3 - len(clause))
    return lits[0], lits[1], lits[2]


def cai_meyer_graph(psi: CnfFormula, with_vc_vs: bool = True) -> CaiMeyerGraph:
    """The clause-gadget graph of ``psi``; 3-colorable iff ``psi`` is satisfiable.

    Clauses may have one to three literals.
    """
    n, m = psi.variable_count, psi.num_clauses
    for i, c in enumerate(psi.clauses):
        if len(c) > 3:
            raise ValueError(f"clause {i} has more than three literals")
    roles: list[Role] = [Role("vc"), Role("vs")]
    edges: list[tuple[int, int]] = []
    if with_vc_vs:
        edges.append((0, 1))
    for i in range(n):
        roles.extend([Role("pos", i), Role("neg", i)])
        x, nx = 2 + 2 * i, 3 + 2 * i
        edges.extend([(x, nx), (0, x), (0, nx)])
    for k, clause in enumerate(psi.clauses):
        base = 2 + 2 * n + 9 * k
        roles.extend(Role("a", k, p) for p in range(3))
        roles.extend(Role("b", k, p) for p in range(3))
        roles.extend(Role("t", k, p) for p in range(3))
        a, b, t = range(base, base + 3), range(base + 3, base + 6), range(base + 6, base + 9)
        edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])])
        for p, l in enumerate(_padded(clause)):
            lv = 2 + 2 * l.var + (0 if l.positive else 1)
            edges.extend([(t[p], b[p]), (a[p], b[p]), (a[p], 1), (b[p], 1), (lv, a[p])])
    g = Graph.from_edges(2 + 2 * n + 9 * m, edges, roles)
    return CaiMeyerGraph(g, psi, with_vc_vs)


def _complete(adj: Sequence[frozenset[int]], colors: list[int], order: Sequence[int],
              skip: tuple[int, int] | None = None) -> bool:
    """Color the uncolored vertices of ``order`` by backtracking over 1..3."""
    todo = [v for v in order if colors[v] == 0]

    def ok(v: int, c: int) -> bool:
        for u in adj[v]:
            if colors[u] == c and (skip is None or norm_edge(u, v) != skip):
                return False
        return True

    def go(i: int) -> bool:
        if i == len(todo):
            return True
        v = todo[i]
        for c in (T, F, C):
            if ok(v, c):
                colors[v] = c
                if go(i + 1):
                    return True
        colors[v] = 0
        return False

    return go(0)


def _gadget_fill(cm: CaiMeyerGraph, colors: list[int], k: int, memo: dict | None = None) -> None:
    """Complete clause ``k``'s gadget given colored literals and ``v_s`` = T."""
    verts = cm.gadget_vertices(k)
    key = tuple(colors[cm.literal_vertex(l)] for l in cm.clause_literals(k))
    if memo is not None and key in memo:
        for v, c in zip(verts, memo[key]):
            colors[v] = c
        return
    for v in verts:
        colors[v] = 0
    if not _complete(cm.graph.adjacency, colors, verts):
        raise NotSatisfying(f"clause {k} gadget cannot be completed")
    if memo is not None:
        memo[key] = tuple(colors[v] for v in verts)


def _partial(cm: CaiMeyerGraph, a: Assignment, skip_clause: int | None,
             memo: dict | None = None) -> list[int]:
    colors = [0] * cm.graph.vertex_count
    colors[cm.vc] = C
    colors[cm.vs] = T
    for i in range(cm.n):
        colors[2 + 2 * i] = T if a[i] else F
        colors[3 + 2 * i] = F if a[i] else T
    for k in range(cm.m):
        if k != skip_clause:
            _gadget_fill(cm, colors, k, memo)
    return colors


def coloring_from_assignment(cm: CaiMeyerGraph, a: Assignment) -> Coloring:
    """3-coloring with literals colored by ``a``, ``v_c`` = C and ``v_s`` = T."""
    if not evaluate(cm.formula, a):
        raise NotSatisfying("assignment does not satisfy the formula")
    return tuple(_partial(cm, a, None, {}))


@lru_cache(maxsize=64)
def g_transform(phi: CnfFormula) -> CaiMeyerGraph:
    """The gadget graph of ``f_transform(phi)`` without the ``v_c``-``v_s`` edge."""
    return cai_meyer_graph(f_transform(phi), with_vc_vs=False)


class _Witnesses:
    """Per-formula cache of partial colorings, one per deleted clause."""

    def __init__(self, phi: CnfFormula):
        self.phi = phi
        self.cm = g_transform(phi)
        self.memo: dict = {}
        self.base: dict[int, tuple[int, ...]] = {}
        self.first_clause: dict[Literal, int] = {}
        self.clauses_of: dict[Literal, list[tuple[int, int]]] = {}
        for k in range(self.cm.m):
            for p, l in enumerate(self.cm.clause_literals(k)):
                self.first_clause.setdefault(l, k)
                self.clauses_of.setdefault(l, []).append((k, p))

    def partial(self, c: int) -> list[int]:
        if c not in self.base:
            alpha = sat_witness(self.phi, c)
            self.base[c] = tuple(_partial(self.cm, alpha, c, self.memo))
        return list(self.base[c])


@lru_cache(maxsize=32)
def _witnesses(phi: CnfFormula) -> _Witnesses:
    return _Witnesses(phi)


def g_opt(phi: CnfFormula, e: tuple[int, int]) -> Coloring:
    """Proper 3-coloring of ``g_transform(phi)`` minus edge ``e``, without search.

    Starts from the witness assignment for a suitable deleted clause and
    repairs locally, depending on whether ``e`` is a variable edge, a
    ``v_c``-literal edge or an edge touching a clause gadget.
    """
    w = _witnesses(phi)
    cm = w.cm
    g = cm.graph
    u, v = norm_edge(*e)
    if not g.has_edge(u, v):
        raise NotAnEdge((u, v))
    ru, rv = g.role(u), g.role(v)
    adj = g.adjacency

    if ru.kind == "pos" and rv.kind == "neg":
        x = Literal(ru.index, True)
        c = w.first_clause[x]
        colors = w.partial(c)
        if colors[u] == F:
            colors[u] = T
        _fill_or_fail(cm, colors, c)
    elif ru.kind == "vc":
        lit = Literal(rv.index, rv.kind == "pos")
        c = w.first_clause[lit]
        colors = w.partial(c)
        if colors[v] == F:
            _demote_literal(w, colors, lit, c)
        _fill_or_fail(cm, colors, c)
    else:
        gv = u if ru.kind in "abt" else v
        c = g.role(gv).index
        colors = w.partial(c)
        lits = cm.clause_literals(c)
        if any(colors[cm.literal_vertex(l)] == T for l in lits):
            _fill_or_fail(cm, colors, c)
        else:
            _fix_unsatisfied(cm, colors, c, (u, v))
    return tuple(colors)


def _fill_or_fail(cm: CaiMeyerGraph, colors: list[int], c: int) -> None:
    verts = cm.gadget_vertices(c)
    for x in verts:
        colors[x] = 0
    if not _complete(cm.graph.adjacency, colors, verts):
        raise WitnessError(f"clause {c} gadget cannot be completed")


def _demote_literal(w: _Witnesses, colors: list[int], lit: Literal, c: int) -> None:
    """Recolor a false literal to C and push the change through its gadgets."""
    cm = w.cm
    lv = cm.literal_vertex(lit)
    colors[lv] = C
    touched: list[int] = []
    for k, p in w.clauses_of[lit]:
        if k == c:
            continue
        a, b, _ = cm.gadget(k)
        if colors[a[p]] == C:
            colors[a[p]] = F
            colors[b[p]] = C
        if k not in touched:
            touched.append(k)
    for k in sorted(touched):
        a, b, t = cm.gadget(k)
        if all(colors[x] == C for x in b):
            lits = cm.clause_literals(k)
            p = next(i for i, l in enumerate(lits) if colors[cm.literal_vertex(l)] == T)
            colors[a[p]] = C
            colors[b[p]] = F
        for x in t:
            colors[x] = 0
        if not _complete(cm.graph.adjacency, colors, t):
            raise WitnessError(f"triangle of clause {k} cannot be recolored")


def _fix_unsatisfied(cm: CaiMeyerGraph, colors: list[int], c: int, e: tuple[int, int]) -> None:
    """All literals of clause ``c`` are F; the missing edge ``e`` frees the gadget."""
    g = cm.graph
    a, b, t = cm.gadget(c)
    for p in range(3):
        colors[a[p]], colors[b[p]] = C, F
    for x in t:
        colors[x] = 0
    u, v = e
    kinds = {g.role(u).kind, g.role(v).kind}
    if kinds == {"t"}:
        third = next(x for x in t if x not in e)
        colors[u] = colors[v] = T
        colors[third] = C
        return
    if kinds == {"b", "t"}:
        tv = u if g.role(u).kind == "t" else v
        rest = [x for x in t if x != tv]
        colors[tv], colors[rest[0]], colors[rest[1]] = F, T, C
        return
    if kinds == {"a", "b"}:
        bv = u if g.role(u).kind == "b" else v
        colors[bv] = C
    elif "a" in kinds:
        av = u if g.role(u).kind == "a" else v
        p = g.role(av).pos
        if cm.vs in e:
            colors[av], colors[b[p]] = T, C
        else:
            colors[av], colors[b[p]] = F, C
    else:
        bv = u if g.role(u).kind == "b" else v
        colors[bv] = T
    if not _complete(g.adjacency, colors, t, skip=norm_edge(u, v)):
        raise WitnessError(f"triangle of clause {c} cannot be colored after removing {e}")


def g_opt_vertex(phi: CnfFormula, v: int) -> Coloring:
    """Proper 3-coloring of ``g_transform(phi)`` minus vertex ``v`` (ids above ``v`` shift down)."""
    g = g_transform(phi).graph
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"no vertex {v}")
    if not g.adjacency[v]:
        raise IsolatedVertex(v)
    e = min(norm_edge(v, u) for u in g.adjacency[v])
    colors = g_opt(phi, e)
    return colors[:v] + colors[v + 1 :]


def join_lift(g: Graph, k: int) -> Graph:
    """``g`` joined with a clique on ``k - 3`` vertices."""
    if k < 4:
        raise KTooSmall(f"k must be at least 4, got {k}")
    return graph_join(g, make_clique(k - 3))
