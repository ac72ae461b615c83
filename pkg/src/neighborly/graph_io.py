"""Graph serialization: graph6, DIMACS edge format and JSON edge lists."""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .errors import ParseError
from .graph import Graph, Role


# -- graph6 -----------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    n = g.vertex_count
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        raise ParseError("graph6 headers are not accepted", position=0)
    if not s:
        raise ParseError("empty graph6 string", position=0)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", position=pos)
    vals = [ord(c) - 63 for c in s]
    if vals[0] < 63:
        n, start = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise ParseError("truncated vertex count", position=len(vals))
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        start = 4
    else:
        if len(vals) < 8:
            raise ParseError("truncated vertex count", position=len(vals))
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        start = 8
    need = (n * (n - 1) // 2 + 5) // 6
    body = vals[start:]
    if len(body) != need:
        raise ParseError(
            f"expected {need} data bytes for {n} vertices, got {len(body)}", position=start
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def iter_graph6(lines: Iterable[str]) -> Iterator[Graph]:
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield from_graph6(line)
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno, position=exc.position) from None


# -- DIMACS edge format -----------------------------------------------------


def to_dimacs_graph(g: Graph) -> str:
    lines = [f"p edge {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def from_dimacs_graph(text: str) -> Graph:
    n = None
    declared = 0
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", line=lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError("expected 'p edge N M'", line=lineno)
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer in problem line", line=lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", line=lineno)
            if len(parts) != 3:
                raise ParseError("expected 'e U V'", line=lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise ParseError("non-integer vertex", line=lineno) from None
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ParseError(f"bad edge {parts[1]} {parts[2]}", line=lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", line=lineno)
    if n is None:
        raise ParseError("missing problem line")
    g = Graph.from_edges(n, edges)
    if g.edge_count != declared:
        raise ParseError(f"declared {declared} edges, found {g.edge_count}")
    return g


# -- JSON edge list ---------------------------------------------------------


def graph_to_obj(g: Graph) -> dict:
    obj: dict = {"n": g.vertex_count, "edges": [list(e) for e in g.sorted_edges]}
    if g.roles is not None:
        obj["roles"] = {str(v): str(r) for v, r in enumerate(g.roles)}
    return obj


def to_json_graph(g: Graph) -> str:
    return json.dumps(graph_to_obj(g), sort_keys=True) + "\n"


def graph_from_obj(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed JSON graph: {exc}") from None
    roles = None
    if obj.get("roles"):
        tags = {int(k): Role.parse(v) for k, v in obj["roles"].items()}
        roles = tuple(tags.get(v, Role("plain")) for v in range(n))
    try:
        return Graph.from_edges(n, edges, roles)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def from_json_graph(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, position=exc.pos) from None
    return graph_from_obj(obj)


def load_graphs(text: str, fmt: str | None = None) -> list[Graph]:
    """Parse one or more graphs, guessing the format when ``fmt`` is None."""
    stripped = text.lstrip()
    if fmt is None:
        if stripped.startswith("{") or stripped.startswith("["):
            fmt = "json"
        elif stripped.startswith(("p", "c", "e")) and " " in stripped.splitlines()[0]:
            fmt = "dimacs"
        else:
            fmt = "graph6"
    if fmt == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno, position=exc.pos) from None
        items = obj if isinstance(obj, list) else [obj]
        return [graph_from_obj(o) for o in items]
    if fmt == "dimacs":
        return [from_dimacs_graph(text)]
    if fmt == "graph6":
        return list(iter_graph6(text.splitlines()))
    raise ValueError(f"unknown graph format {fmt!r}")


def dump_graph(g: Graph, fmt: str) -> str:
    if fmt == "json":
        return to_json_graph(g)
    if fmt == "dimacs":
        return to_dimacs_graph(g)
    if fmt == "graph6":
        return to_graph6(g) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")
