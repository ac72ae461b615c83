"""Vertex-cover reductions: the clause-triangle construction and the join gadget."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..cnf import Assignment, CnfFormula, Literal, evaluate
from ..errors import EmptyInput, NotATriangle, NotE3Cnf, WitnessError
from ..graph import Graph, Role, edgeless, disjoint_union, graph_join
from ..solvers import VertexCover, sat_solve
from .sat import f_transform, sat_witness


@dataclass(frozen=True)
class VcReduction:
    """Variable edges at ``2i`` / ``2i + 1``, clause triangles from ``2n`` on."""

    graph: Graph
    k: int
    formula: CnfFormula

    def literal_vertex(self, l: Literal) -> int:
        return 2 * l.var + (0 if l.positive else 1)

    def triangle(self, j: int) -> tuple[int, int, int]:
        base = 2 * self.formula.variable_count + 3 * j
        return base, base + 1, base + 2

    def clause_of(self, tri: tuple[int, int, int]) -> int:
        base = 2 * self.formula.variable_count
        lo = min(tri)
        j, r = divmod(lo - base, 3)
        if lo < base or r or j >= self.formula.num_clauses or sorted(tri) != list(self.triangle(j)):
            raise NotATriangle(f"{tuple(tri)} is not a clause triangle")
        return j


def vc_reduction(psi: CnfFormula) -> VcReduction:
    """Graph with a cover of size ``n + 2m`` iff ``psi`` is satisfiable."""
    if not psi.is_e3cnf():
        raise NotE3Cnf("vertex-cover reduction needs nonempty E3CNF")
    n, m = psi.variable_count, psi.num_clauses
    edges: list[tuple[int, int]] = [(2 * i, 2 * i + 1) for i in range(n)]
    roles = [Role(kind, i) for i in range(n) for kind in ("pos", "neg")]
    for j, clause in enumerate(psi.clauses):
        base = 2 * n + 3 * j
        edges.extend([(base, base + 1), (base + 1, base + 2), (base, base + 2)])
        for p, l in enumerate(clause):
            edges.append((base + p, 2 * l.var + (0 if l.positive else 1)))
            roles.append(Role("t", j, p))
    g = Graph.from_edges(2 * n + 3 * m, edges, roles)
    return VcReduction(g, n + 2 * m, psi)


def cover_from_assignment(red: VcReduction, a: Assignment, skip: int | None = None) -> list[int]:
    """Cover (original ids) from an assignment satisfying every clause except ``skip``."""
    psi = red.formula
    cover = [red.literal_vertex(Literal(i, a[i])) for i in range(psi.variable_count)]
    for j, clause in enumerate(psi.clauses):
        if j == skip:
            continue
        p = next((q for q, l in enumerate(clause) if l.value(a)), None)
        if p is None:
            raise WitnessError(f"assignment falsifies clause {j}")
        tri = red.triangle(j)
        cover.extend(v for q, v in enumerate(tri) if q != p)
    return sorted(cover)


def vc_triangle_opt(red: VcReduction, tri: tuple[int, int, int],
                    witness: Assignment | None = None) -> VertexCover:
    """Optimal cover of ``red.graph`` minus the clause triangle ``tri``.

    Ids are those of the reduced graph (survivors re-indexed densely).
    ``witness`` must satisfy the formula minus that clause; when omitted it
    is found by search.
    """
    j = red.clause_of(tri)
    if witness is None:
        witness = sat_solve(red.formula.without_clause(j))
        if witness is None:
            raise WitnessError(f"formula minus clause {j} is unsatisfiable")
    elif not evaluate(red.formula.without_clause(j), witness):
        raise WitnessError("witness does not satisfy the formula minus the clause")
    cover = cover_from_assignment(red, witness, skip=j)
    lo = min(tri)
    return tuple(v if v < lo else v - 3 for v in cover)


@lru_cache(maxsize=64)
def f_vc_reduction(phi: CnfFormula) -> VcReduction:
    return vc_reduction(f_transform(phi))


def f_triangle_opt(phi: CnfFormula, j: int) -> VertexCover:
    """Search-free optimal cover of ``f_vc_reduction(phi)`` minus clause triangle ``j``."""
    red = f_vc_reduction(phi)
    return vc_triangle_opt(red, red.triangle(j), sat_witness(phi, j))


def theta_gadget(g: Graph, h: Graph) -> Graph:
    """Pad both graphs with isolated vertices to ``max(|G|, |H|) + 1`` and join them."""
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise EmptyInput("both graphs need at least one vertex")
    n = max(g.vertex_count, h.vertex_count)
    left = disjoint_union(g, edgeless(n + 1 - g.vertex_count))
    right = disjoint_union(h, edgeless(n + 1 - h.vertex_count))
    return graph_join(left, right)
