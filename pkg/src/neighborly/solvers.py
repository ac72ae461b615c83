"""Exact solvers for SAT, k-colorability, chromatic number and vertex cover.

Everything here is deterministic: branching breaks ties by lowest index and
colorings are returned in a normal form (colors numbered by first appearance
along the vertex order), so repeated calls give identical witnesses.
"""

from __future__ import annotations

import heapq
import time
from typing import Sequence

from .cnf import Assignment, CnfFormula
from .errors import EmptyGraph, Timeout
from .graph import Graph, bipartition

Coloring = tuple[int, ...]
VertexCover = tuple[int, ...]

# work (search nodes times vertex count) the plain backtracking colorer may
# spend before handing the instance to the clause-learning SAT route
BACKTRACK_LIMIT = 500


class _Clock:
    __slots__ = ("deadline", "ticks")

    def __init__(self, budget: float | None):
        self.deadline = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks & 255 == 0:
            if time.monotonic() > self.deadline:
                raise Timeout("time budget exhausted")


# -- SAT --------------------------------------------------------------------


def sat_solve(phi: CnfFormula, time_budget: float | None = None) -> Assignment | None:
    """Satisfying assignment of ``phi``, or ``None`` when it is unsatisfiable.

    DPLL search with unit propagation over two watched literals, plus
    conflict-clause learning and backjumping. Decisions always take the
    lowest-index unassigned variable, trying false the first time and the
    last value it held afterwards (phase saving), so the result is a
    deterministic function of the formula.
    """
    clock = _Clock(time_budget)
    n = phi.variable_count
    # literal p: variable p >> 1, negated when p & 1
    clauses = [[2 * l.var + (not l.positive) for l in c] for c in phi.clauses]
    value = [-1] * n
    level = [0] * n
    reason = [-1] * n
    trail: list[int] = []
    trail_lim: list[int] = []
    watches: list[list[int]] = [[] for _ in range(2 * n)]

    def lit_value(p: int) -> int:
        v = value[p >> 1]
        return v if v < 0 else v ^ (p & 1)

    def enqueue(p: int, r: int) -> None:
        v = p >> 1
        value[v] = 1 - (p & 1)
        level[v] = len(trail_lim)
        reason[v] = r
        trail.append(p)

    for ci, c in enumerate(clauses):
        if len(c) == 1:
            s = lit_value(c[0])
            if s == 0:
                return None
            if s < 0:
                enqueue(c[0], -1)
        else:
            watches[c[0]].append(ci)
            watches[c[1]].append(ci)
    qhead = 0

    def propagate() -> int:
        nonlocal qhead
        while qhead < len(trail):
            false_lit = trail[qhead] ^ 1
            qhead += 1
            ws = watches[false_lit]
            i = j = 0
            while i < len(ws):
                clock.tick()
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if lit_value(c[0]) == 1:
                    ws[j] = ci
                    j += 1
                    continue
                for k in range(2, len(c)):
                    if lit_value(c[k]) != 0:
                        c[1], c[k] = c[k], c[1]
                        watches[c[1]].append(ci)
                        break
                else:
                    ws[j] = ci
                    j += 1
                    if lit_value(c[0]) == 0:
                        ws[j:] = ws[i:]
                        return ci
                    enqueue(c[0], ci)
            del ws[j:]
        return -1

    def analyze(confl: int) -> tuple[list[int], int]:
        seen: set[int] = set()
        learnt = [0]
        current = len(trail_lim)
        counter = 0
        p = -1
        idx = len(trail) - 1
        while True:
            c = clauses[confl]
            for q in c if p < 0 else c[1:]:
                v = q >> 1
                if v not in seen and level[v] > 0:
                    seen.add(v)
                    if level[v] == current:
                        counter += 1
                    else:
                        learnt.append(q)
            while trail[idx] >> 1 not in seen:
                idx -= 1
            p = trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            confl = reason[p >> 1]
        learnt[0] = p ^ 1
        back = 0
        if len(learnt) > 1:
            k = max(range(1, len(learnt)), key=lambda t: level[learnt[t] >> 1])
            learnt[1], learnt[k] = learnt[k], learnt[1]
            back = level[learnt[1] >> 1]
        return learnt, back

    cursor = 0  # every variable below it is assigned
    phase = [1] * n  # negation bit of the next decision literal

    def cancel_until(lvl: int) -> None:
        nonlocal qhead, cursor
        if len(trail_lim) > lvl:
            for p in trail[trail_lim[lvl]:]:
                v = p >> 1
                phase[v] = p & 1
                value[v] = -1
                reason[v] = -1
                if v < cursor:
                    cursor = v
            del trail[trail_lim[lvl]:]
            del trail_lim[lvl:]
            qhead = len(trail)

    while True:
        confl = propagate()
        if confl >= 0:
            if not trail_lim:
                return None
            learnt, back = analyze(confl)
            cancel_until(back)
            if len(learnt) == 1:
                enqueue(learnt[0], -1)
            else:
                clauses.append(learnt)
                ci = len(clauses) - 1
                watches[learnt[0]].append(ci)
                watches[learnt[1]].append(ci)
                enqueue(learnt[0], ci)
            continue
        while cursor < n and value[cursor] >= 0:
            cursor += 1
        if cursor == n:
            return tuple(v == 1 for v in value)
        trail_lim.append(len(trail))
        enqueue(2 * cursor + phase[cursor], -1)


# -- coloring ---------------------------------------------------------------


def normalize_coloring(colors: Sequence[int]) -> Coloring:
    """Renumber colors 1, 2, ... by first appearance along the vertex order."""
    remap: dict[int, int] = {}
    return tuple(remap.setdefault(c, len(remap) + 1) for c in colors)


def is_proper(g: Graph, colors: Sequence[int]) -> bool:
    return len(colors) == g.vertex_count and all(colors[u] != colors[v] for u, v in g.edges)


def color_count(colors: Sequence[int]) -> int:
    return len(set(colors))


def k_colorable(g: Graph, k: int, time_budget: float | None = None) -> Coloring | None:
    """A proper coloring with colors in ``1..k``, or ``None`` if none exists.

    Backtracking in DSATUR order with forward checking. A fresh color is only
    tried once (one more than the largest color used so far), which fixes the
    first vertex to color 1 and removes color-permutation symmetry. Searches
    that backtrack more than ``BACKTRACK_LIMIT`` times continue on a SAT encoding,
    where learned clauses avoid the thrashing chronological backtracking
    suffers on large sparse gadget graphs.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.vertex_count
    if n == 0:
        return ()
    if k == 1:
        return tuple([1] * n) if not g.edges else None
    if k == 2 and g.edges:
        parts = bipartition(g)
        if parts is None:
            return None
        return normalize_coloring([1 if v in parts[0] else 2 for v in g.vertices])
    clock = _Clock(time_budget)
    adj = [sorted(a) for a in g.adjacency]
    deg = [len(a) for a in adj]
    color = [0] * n
    cnt = [[0] * (k + 1) for _ in range(n)]
    dom = [k] * n

    def assign(v: int, c: int) -> bool:
        color[v] = c
        ok = True
        for u in adj[v]:
            row = cnt[u]
            row[c] += 1
            if row[c] == 1:
                dom[u] -= 1
                if dom[u] == 0 and color[u] == 0:
                    ok = False
        return ok

    def unassign(v: int) -> None:
        c = color[v]
        for u in adj[v]:
            row = cnt[u]
            row[c] -= 1
            if row[c] == 0:
                dom[u] += 1
        color[v] = 0

    def select() -> int:
        best, key = -1, None
        for v in range(n):
            if color[v] == 0:
                kv = (dom[v], -deg[v])
                if key is None or kv < key:
                    best, key = v, kv
        return best

    def frame(maxused: int) -> list:
        v = select()
        top = min(k, maxused + 1)
        cands = [c for c in range(1, top + 1) if cnt[v][c] == 0]
        return [v, cands, 0, maxused]

    stack = [frame(0)]
    colored = 0
    fails = 0
    while stack:
        clock.tick()
        if fails > BACKTRACK_LIMIT:
            left = None if clock.deadline is None else max(0.0, clock.deadline - time.monotonic())
            return _k_colorable_by_sat(g, k, left)
        fr = stack[-1]
        v, cands, i, maxused = fr
        if color[v]:
            unassign(v)
            colored -= 1
        if i == len(cands):
            stack.pop()
            fails += 1
            continue
        fr[2] = i + 1
        c = cands[i]
        ok = assign(v, c)
        colored += 1
        if not ok:
            fails += 1
            continue
        if colored == n:
            return normalize_coloring(color)
        stack.append(frame(max(maxused, c)))
    return None


def _dfs_order(g: Graph, start: Sequence[int]) -> list[int]:
    """Depth-first vertex order seeded at ``start``, lowest neighbor first."""
    adj = g.adjacency
    seen: set[int] = set()
    order: list[int] = []
    for root in list(start) + list(g.vertices):
        stack = [root]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            stack.extend(sorted(adj[v] - seen, reverse=True))
    return order


def _k_colorable_by_sat(g: Graph, k: int, time_budget: float | None) -> Coloring | None:
    """k-colorability through a CNF encoding handed to :func:`sat_solve`.

    A greedily found clique is pinned to colors ``1..|Q|`` to break symmetry.
    Variables are numbered along a depth-first order from that clique, so the
    solver's lowest-index decisions follow the graph's local structure.
    """
    n = g.vertex_count
    q = greedy_clique(g)
    if len(q) > k:
        return None
    pos = {v: i for i, v in enumerate(_dfs_order(g, q))}
    clauses: list[list[int]] = []
    var = lambda v, c: pos[v] * k + c  # noqa: E731  (1-based DIMACS ids, c in 1..k)
    for v in range(n):
        clauses.append([var(v, c) for c in range(1, k + 1)])
    for u, v in g.sorted_edges:
        for c in range(1, k + 1):
            clauses.append([-var(u, c), -var(v, c)])
    for i, v in enumerate(q):
        clauses.append([var(v, i + 1)])
    a = sat_solve(CnfFormula.from_ints(clauses, n * k), time_budget)
    if a is None:
        return None
    return normalize_coloring(
        [next(c for c in range(1, k + 1) if a[var(v, c) - 1]) for v in range(n)]
    )


def greedy_coloring(g: Graph) -> Coloring:
    """DSATUR greedy coloring (no backtracking)."""
    n = g.vertex_count
    adj = g.adjacency
    color = [0] * n
    seen: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = min(
            (u for u in range(n) if color[u] == 0),
            key=lambda u: (-len(seen[u]), -len(adj[u]), u),
        )
        c = 1
        while c in seen[v]:
            c += 1
        color[v] = c
        for u in adj[v]:
            seen[u].add(c)
    return normalize_coloring(color)


def greedy_clique(g: Graph) -> list[int]:
    adj = g.adjacency
    best: list[int] = []
    for s in sorted(g.vertices, key=lambda v: (-len(adj[v]), v)):
        clique = [s]
        cand = set(adj[s])
        while cand:
            v = min(cand, key=lambda u: (-len(adj[u] & cand), u))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def chromatic_number(g: Graph, time_budget: float | None = None) -> tuple[int, Coloring]:
    if g.vertex_count == 0:
        raise EmptyGraph("the null graph has no chromatic number")
    if not g.edges:
        return 1, tuple([1] * g.vertex_count)
    two = k_colorable(g, 2)
    if two is not None:
        return 2, two
    upper = greedy_coloring(g)
    hi = color_count(upper)
    lo = max(3, len(greedy_clique(g)))
    deadline = None if time_budget is None else time.monotonic() + time_budget
    for k in range(lo, hi):
        left = None if deadline is None else max(0.0, deadline - time.monotonic())
        col = k_colorable(g, k, left)
        if col is not None:
            return k, col
    return hi, upper


# -- vertex cover -----------------------------------------------------------


def is_vertex_cover(g: Graph, cover: Sequence[int]) -> bool:
    s = set(cover)
    return all(u in s or v in s for u, v in g.edges)


def _clique_partition(adj: dict[int, set[int]]) -> list[list[int]]:
    """Greedy partition of the vertices into cliques.

    Cliques grow from minimum-degree seeds, preferring the neighbor that
    shares most still-free neighbors with the clique so far.
    """
    free = set(adj)
    cliques = []
    for seed in sorted(adj, key=lambda u: (len(adj[u]), u)):
        if seed not in free:
            continue
        free.discard(seed)
        clique = [seed]
        cand = adj[seed] & free
        while cand:
            v = min(cand, key=lambda u: (-len(adj[u] & cand), u))
            free.discard(v)
            clique.append(v)
            cand &= adj[v]
            cand.discard(v)
        cliques.append(clique)
    return cliques


def _clique_cover_bound(adj: dict[int, set[int]]) -> int:
    """Lower bound on the cover size: sum of (size - 1) over a clique partition."""
    return len(adj) - len(_clique_partition(adj))


def _cover_meeting_bound(adj: dict[int, set[int]], cliques: list[list[int]],
                         clock: _Clock) -> list[int] | None:
    """A cover of size exactly the clique-partition bound, or None.

    Each clique needs all but one of its vertices, so a cover meets the bound
    iff every clique keeps at least one vertex out: edge clauses plus one
    clause per clique, handed to :func:`sat_solve`.
    """
    order = sorted(adj)
    ids = {v: i + 1 for i, v in enumerate(order)}
    clauses = [[ids[u], ids[v]] for u in order for v in adj[u] if u < v]
    clauses.extend([-ids[v] for v in q] for q in cliques)
    left = None if clock.deadline is None else max(0.0, clock.deadline - time.monotonic())
    a = sat_solve(CnfFormula.from_ints(clauses, len(order)), left)
    return None if a is None else [v for v in order if a[ids[v] - 1]]


def _remove(adj: dict[int, set[int]], v: int, dirty: set[int] | None = None) -> None:
    for u in adj.pop(v):
        adj[u].discard(v)
        if dirty is not None:
            dirty.add(u)


def _reduce(adj: dict[int, set[int]], taken: list[int], dirty: set[int] | None = None) -> None:
    """Apply degree-0, degree-1 and degree-2-in-a-triangle rules to a fixpoint.

    Only vertices in ``dirty`` (all vertices when None) are examined first;
    neighbors of removed vertices are re-examined.
    """
    todo = set(adj) if dirty is None else {v for v in dirty if v in adj}
    heap = sorted(todo)
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        todo.discard(v)
        if v not in adj:
            continue
        nb = adj[v]
        touched: set[int] = set()
        if not nb:
            del adj[v]
        elif len(nb) == 1:
            (u,) = nb
            taken.append(u)
            _remove(adj, u, touched)
            del adj[v]
        elif len(nb) == 2:
            x, y = sorted(nb)
            if y not in adj[x]:
                continue
            taken.extend((x, y))
            _remove(adj, x, touched)
            _remove(adj, y, touched)
            del adj[v]
        else:
            continue
        for u in touched:
            if u in adj and u not in todo:
                todo.add(u)
                heapq.heappush(heap, u)


def _greedy_cover(adj: dict[int, set[int]]) -> list[int]:
    """Best of two heuristics: max-degree picking, and the complement of a
    min-degree greedy independent set (both interleaved with reductions)."""
    work = {v: set(nb) for v, nb in adj.items()}
    by_degree: list[int] = []
    _reduce(work, by_degree)
    while work:
        v = min(work, key=lambda u: (-len(work[u]), u))
        by_degree.append(v)
        dirty: set[int] = set()
        _remove(work, v, dirty)
        _reduce(work, by_degree, dirty)
    work = {v: set(nb) for v, nb in adj.items()}
    by_independence: list[int] = []
    _reduce(work, by_independence)
    while work:
        v = min(work, key=lambda u: (len(work[u]), u))
        nb = sorted(work[v])
        by_independence.extend(nb)
        dirty = set()
        for u in nb:
            _remove(work, u, dirty)
        _reduce(work, by_independence, dirty)
    return _improve_cover(adj, min(by_degree, by_independence, key=len))


def _improve_cover(adj: dict[int, set[int]], cover: list[int]) -> list[int]:
    """Shrink a cover by (1,2)-swaps on the complementary independent set.

    A vertex ``x`` leaves the independent set when two non-adjacent
    neighbors of ``x``, each having ``x`` as their only independent
    neighbor, can enter in its place.
    """
    indep = set(adj) - set(cover)
    tight = {v: sum(1 for u in adj[v] if u in indep) for v in adj}

    def enter(v: int) -> None:
        indep.add(v)
        for u in adj[v]:
            tight[u] += 1

    def leave(v: int) -> None:
        indep.discard(v)
        for u in adj[v]:
            tight[u] -= 1

    improved = True
    while improved:
        improved = False
        for v in sorted(adj):
            if v not in indep and tight[v] == 0:
                enter(v)
                improved = True
        for x in sorted(indep):
            if x not in indep:
                continue
            cands = sorted(u for u in adj[x] if tight[u] == 1)
            pair = next(
                ((u, w) for i, u in enumerate(cands) for w in cands[i + 1 :] if w not in adj[u]),
                None,
            )
            if pair is None:
                continue
            leave(x)
            enter(pair[0])
            enter(pair[1])
            for v in sorted(adj[x]):
                if v not in indep and tight[v] == 0:
                    enter(v)
            improved = True
    return sorted(set(adj) - indep)


def _components(adj: dict[int, set[int]]) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        seen.add(s)
        comp, todo = [], [s]
        while todo:
            x = todo.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        comps.append(comp)
    return comps


def _solve_below(adj: dict[int, set[int]], limit: int, clock: _Clock,
                 dirty: set[int] | None = None) -> list[int] | None:
    """Minimum cover of ``adj`` if it has fewer than ``limit`` vertices, else None.

    Consumes ``adj``. Independent components are solved one at a time, each
    against the budget left after the others' lower bounds.
    """
    clock.tick()
    taken: list[int] = []
    _reduce(adj, taken, dirty)
    limit -= len(taken)
    if limit <= 0:
        return None
    if not adj:
        return taken
    comps = _components(adj)
    if len(comps) > 1:
        parts = [{v: adj[v] for v in comp} for comp in comps]
        bounds = [_clique_cover_bound(p) for p in parts]
        if sum(bounds) >= limit:
            return None
        spent = 0
        rest = sum(bounds)
        for part, lb in zip(parts, bounds):
            rest -= lb
            sub = _solve_below(part, limit - spent - rest, clock)
            if sub is None:
                return None
            spent += len(sub)
            taken.extend(sub)
        return taken
    lb = _clique_cover_bound(adj)
    if lb >= limit:
        return None
    v = min(adj, key=lambda u: (-len(adj[u]), u))
    nb = sorted(adj[v])
    best: list[int] | None = None
    left = {u: set(x) for u, x in adj.items()}
    touched: set[int] = set()
    _remove(left, v, touched)
    sub = _solve_below(left, limit - 1, clock, touched)
    if sub is not None:
        best = [v] + sub
        limit = len(best)
        if limit == lb:
            return taken + best
    if len(nb) < limit:
        touched = set()
        for u in nb:
            _remove(adj, u, touched)
        sub = _solve_below(adj, limit - len(nb), clock, touched)
        if sub is not None:
            best = nb + sub
    return None if best is None else taken + best


def _cover_component(adj: dict[int, set[int]], clock: _Clock) -> list[int]:
    greedy = _greedy_cover(adj)
    cliques = _clique_partition(adj)
    bound = len(adj) - len(cliques)
    if len(greedy) == bound:
        return greedy
    if len(greedy) == bound + 1:
        exact = _cover_meeting_bound(adj, cliques, clock)
        return greedy if exact is None else exact
    found = _solve_below({u: set(x) for u, x in adj.items()}, len(greedy), clock)
    return greedy if found is None else found


def min_vertex_cover(g: Graph, time_budget: float | None = None) -> VertexCover:
    """A minimum vertex cover as a sorted tuple.

    Branch and bound on a maximum-degree vertex (take it, or take all of its
    neighbors) after degree-0/1 and degree-2-in-triangle reductions, pruned
    by a clique-partition lower bound. Components that appear during the
    search are solved separately. When the heuristic cover exceeds the bound
    by exactly one, whether the bound is attainable is a pure CNF question
    and is settled by the SAT solver instead.
    """
    clock = _Clock(time_budget)
    adj = {v: set(g.adjacency[v]) for v in g.vertices if g.adjacency[v]}
    cover: list[int] = []
    for comp in _components(adj):
        sub = {v: adj[v] for v in comp}
        cover.extend(_cover_component(sub, clock))
    return tuple(sorted(cover))


def vertex_cover_number(g: Graph, time_budget: float | None = None) -> int:
    return len(min_vertex_cover(g, time_budget))
