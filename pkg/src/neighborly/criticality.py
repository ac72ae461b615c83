"""Minimality and criticality recognizers by exhaustive neighbor checks.

Every recognizer solves the base instance and each one-edge-deleted,
one-vertex-deleted or one-clause-deleted neighbor exactly, and reports the
first neighbor that breaks the property.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .cnf import CnfFormula
from .graph import Graph
from .solvers import chromatic_number, k_colorable, sat_solve, vertex_cover_number

EDGE = "edge"
VERTEX = "vertex"
Value = int | bool


@dataclass(frozen=True)
class NeighborValue:
    neighbor: tuple[int, ...]
    value: Value

    def to_obj(self) -> dict:
        return {"neighbor": list(self.neighbor), "value": self.value}


@dataclass(frozen=True)
class CriticalityReport:
    """``certificate`` is the first failing neighbor, or ``()`` when the base itself fails."""

    notion: str
    base: Value
    neighbors: tuple[NeighborValue, ...]
    verdict: bool
    certificate: tuple[int, ...] | None = None
    degenerate: bool = False
    notes: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.verdict

    def to_obj(self) -> dict:
        return {
            "notion": self.notion,
            "base": self.base,
            "neighbors": [nv.to_obj() for nv in self.neighbors],
            "verdict": self.verdict,
            "certificate": None if self.certificate is None else list(self.certificate),
            "degenerate": self.degenerate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True)


def _check_mode(mode: str) -> None:
    if mode not in (EDGE, VERTEX):
        raise ValueError(f"mode must be {EDGE!r} or {VERTEX!r}")


def graph_neighbors(g: Graph, mode: str) -> Iterator[tuple[tuple[int, ...], Graph]]:
    """One-edge-deleted or one-vertex-deleted neighbors, keyed by what was removed."""
    _check_mode(mode)
    if mode == EDGE:
        for e in g.sorted_edges:
            yield e, Graph(g.vertex_count, g.edges - {e}, g.roles)
    else:
        for v in g.vertices:
            yield (v,), g.without_vertices([v])


def _scan(notion: str, base: Value, base_ok: bool,
          items: Iterable[tuple[tuple[int, ...], Value]], ok: Callable[[Value], bool],
          degenerate: bool = False) -> CriticalityReport:
    values = []
    certificate = None if base_ok else ()
    for key, value in items:
        values.append(NeighborValue(key, value))
        if certificate is None and not ok(value):
            certificate = key
    if degenerate:
        return CriticalityReport(notion, base, tuple(values), False, None, True)
    return CriticalityReport(notion, base, tuple(values), certificate is None, certificate)


def _chi(g: Graph) -> int:
    return chromatic_number(g)[0] if g.vertex_count else 0


def is_minimally_k_uncolorable(g: Graph, k: int, mode: str = EDGE) -> CriticalityReport:
    """Not ``k``-colorable while every neighbor is.

    Values are ``k``-colorability flags rather than chromatic numbers.
    """
    if k < 1:
        raise ValueError("k must be positive")
    _check_mode(mode)
    base = k_colorable(g, k) is not None if g.vertex_count else True
    items = (
        (key, k_colorable(h, k) is not None if h.vertex_count else True)
        for key, h in graph_neighbors(g, mode)
    )
    return _scan(f"minimally-{k}-uncolorable/{mode}", base, not base, items, bool)


def is_chi_critical(g: Graph, mode: str = EDGE) -> CriticalityReport:
    """Chromatic number drops under every deletion.

    A graph with nothing to delete (no edges in edge mode, no vertices in
    vertex mode) is reported as degenerate and not critical.
    """
    _check_mode(mode)
    base = _chi(g)
    items = ((key, _chi(h)) for key, h in graph_neighbors(g, mode))
    empty = not g.edges if mode == EDGE else g.vertex_count == 0
    return _scan(f"chi-critical/{mode}", base, True, items, lambda v: v < base, empty)


def is_beta_critical(g: Graph, mode: str = EDGE) -> CriticalityReport:
    """Vertex cover number drops under every deletion.

    Edgeless graphs in edge mode and ``K1`` in vertex mode are degenerate
    and not critical.
    """
    _check_mode(mode)
    base = vertex_cover_number(g)
    items = ((key, vertex_cover_number(h)) for key, h in graph_neighbors(g, mode))
    empty = not g.edges if mode == EDGE else g.vertex_count <= 1
    return _scan(f"beta-critical/{mode}", base, True, items, lambda v: v < base, empty)


def is_beta_vertex_critical(g: Graph) -> CriticalityReport:
    return is_beta_critical(g, VERTEX)


def is_minimal_unsat(phi: CnfFormula) -> CriticalityReport:
    """Unsatisfiable, yet satisfiable after deleting any one clause.

    Values are satisfiability flags; neighbors are keyed by clause index.
    """
    base = sat_solve(phi) is not None
    items = (
        ((c,), sat_solve(phi.without_clause(c)) is not None)
        for c in range(phi.num_clauses)
    )
    return _scan("minimal-unsat", base, not base, items, bool)


def is_beta_stable(g: Graph) -> bool:
    """At least one edge, and no single edge deletion lowers the vertex cover number."""
    if not g.edges:
        return False
    beta = vertex_cover_number(g)
    return all(vertex_cover_number(h) == beta for _, h in graph_neighbors(g, EDGE))


def find_beta_stable_graphs(graphs: Iterable[Graph], max_vertices: int = 8) -> list[Graph]:
    """The β-stable members of ``graphs``, in input order."""
    found = []
    for g in graphs:
        if g.vertex_count > max_vertices:
            raise ValueError(f"graph with {g.vertex_count} vertices exceeds {max_vertices}")
        if is_beta_stable(g):
            found.append(g)
    return found
