"""CNF formulas and witness-carrying formula transformations.

A :class:`WitnessedReduction` maps a formula to a new one and, for every
clause ``c`` of the output, can produce an assignment satisfying the output
with ``c`` deleted. Stages compose through :class:`Pipeline`; each stage asks
its ``upstream`` callable for an assignment of its own input with one clause
deleted and extends it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import (
    ClauseTooWide,
    EmptyClause,
    IncompleteAssignment,
    NotE3Cnf,
    ParseError,
    WitnessError,
)

Assignment = tuple[bool, ...]
Upstream = Callable[[int], Assignment]


class Literal(NamedTuple):
    var: int
    positive: bool = True

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def value(self, a: Sequence[bool]) -> bool:
        return a[self.var] == self.positive

    def to_dimacs(self) -> int:
        return self.var + 1 if self.positive else -(self.var + 1)

    @classmethod
    def from_dimacs(cls, x: int) -> "Literal":
        return cls(abs(x) - 1, x > 0)

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"~x{self.var}"


Clause = tuple[Literal, ...]


class VarRole(NamedTuple):
    """Where a variable came from.

    ``kind`` is ``original``, ``selector``, ``splitter``, ``copy`` or
    ``padding``; ``a``/``b`` locate it (source variable, clause, copy index).
    """

    kind: str
    a: int = -1
    b: int = -1

    def __str__(self) -> str:
        bits = [str(x) for x in (self.a, self.b) if x >= 0]
        return f"{self.kind}({','.join(bits)})"


def lit(x: int) -> Literal:
    """Literal from a 1-indexed signed integer (DIMACS convention)."""
    return Literal.from_dimacs(x)


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: tuple[Clause, ...]
    var_roles: tuple[VarRole, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.variable_count < 0:
            raise ValueError("variable_count must be non-negative")
        cleaned = []
        for i, clause in enumerate(self.clauses):
            seen: dict[Literal, None] = {}
            for l in clause:
                l = Literal(int(l[0]), bool(l[1]))
                if not 0 <= l.var < self.variable_count:
                    raise ValueError(f"clause {i}: variable {l.var} out of range")
                seen.setdefault(l, None)
            if not seen:
                raise EmptyClause(f"clause {i} is empty")
            cleaned.append(tuple(seen))
        object.__setattr__(self, "clauses", tuple(cleaned))
        if self.var_roles is not None and len(self.var_roles) != self.variable_count:
            raise ValueError("var_roles must cover every variable")

    @classmethod
    def from_ints(cls, clauses: Iterable[Iterable[int]], variable_count: int | None = None) -> "CnfFormula":
        """Build from DIMACS-style signed integer clauses."""
        cls_ = tuple(tuple(Literal.from_dimacs(x) for x in c) for c in clauses)
        if variable_count is None:
            variable_count = max((l.var + 1 for c in cls_ for l in c), default=0)
        return cls(variable_count, cls_)

    def to_ints(self) -> list[list[int]]:
        return [[l.to_dimacs() for l in c] for c in self.clauses]

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @classmethod
    def _trusted(cls, n: int, clauses: tuple[Clause, ...], roles) -> "CnfFormula":
        # skips validation; only for clauses taken from an already valid formula
        out = object.__new__(cls)
        object.__setattr__(out, "variable_count", n)
        object.__setattr__(out, "clauses", clauses)
        object.__setattr__(out, "var_roles", roles)
        return out

    def without_clause(self, index: int) -> "CnfFormula":
        if not 0 <= index < len(self.clauses):
            raise IndexError(f"no clause {index}")
        rest = self.clauses[:index] + self.clauses[index + 1 :]
        return CnfFormula._trusted(self.variable_count, rest, self.var_roles)

    def is_e3cnf(self) -> bool:
        return bool(self.clauses) and all(
            len(c) == 3 and len({l.var for l in c}) == 3 for c in self.clauses
        )

    def used_variables(self) -> set[int]:
        return {l.var for c in self.clauses for l in c}

    def literal_occurrences(self) -> set[Literal]:
        return {l for c in self.clauses for l in c}

    def __str__(self) -> str:
        return " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)


def evaluate(phi: CnfFormula, a: Sequence[bool]) -> bool:
    if len(a) < phi.variable_count:
        raise IncompleteAssignment(
            f"assignment covers {len(a)} of {phi.variable_count} variables"
        )
    return all(any(a[l.var] == l.positive for l in c) for c in phi.clauses)


def is_tautology(clause: Clause) -> bool:
    return any(-l in clause for l in clause)


def remove_tautologies(phi: CnfFormula) -> CnfFormula:
    kept = tuple(c for c in phi.clauses if not is_tautology(c))
    return CnfFormula(phi.variable_count, kept, phi.var_roles)


def roles_of(phi: CnfFormula) -> tuple[VarRole, ...]:
    if phi.var_roles is not None:
        return phi.var_roles
    return tuple(VarRole("original", v) for v in range(phi.variable_count))


# -- DIMACS CNF and witness JSON --------------------------------------------


def to_dimacs_cnf(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.variable_count} {phi.num_clauses}"]
    lines.extend(" ".join(str(x) for x in c) + " 0" for c in phi.to_ints())
    return "\n".join(lines) + "\n"


def from_dimacs_cnf(text: str) -> CnfFormula:
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected a single 'p cnf N M' line", line=lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("non-integer in problem line", line=lineno) from None
            continue
        if header is None:
            raise ParseError("clause before problem line", line=lineno)
        for tok in line.split():
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", line=lineno) from None
            if x == 0:
                if not current:
                    raise ParseError("empty clause", line=lineno)
                clauses.append(current)
                current = []
                continue
            if abs(x) > header[0]:
                raise ParseError(f"literal {x} exceeds variable count", line=lineno)
            if x in current:
                raise ParseError(f"duplicate literal {x} in clause", line=lineno)
            current.append(x)
    if header is None:
        raise ParseError("missing problem line")
    if current:
        clauses.append(current)
    if len(clauses) != header[1]:
        raise ParseError(f"declared {header[1]} clauses, found {len(clauses)}")
    return CnfFormula.from_ints(clauses, header[0])


def witness_to_json(deleted_clause: int, a: Sequence[bool]) -> str:
    obj = {
        "deleted_clause": deleted_clause,
        "assignment": {str(v + 1): int(bool(x)) for v, x in enumerate(a)},
    }
    return json.dumps(obj, sort_keys=True)


# -- witnessed reductions ---------------------------------------------------


def solving_upstream(phi: CnfFormula) -> Upstream:
    """Upstream that finds each one-clause-deleted assignment by search."""
    from .solvers import sat_solve

    def up(k: int) -> Assignment:
        a = sat_solve(phi.without_clause(k))
        if a is None:
            raise WitnessError(f"input minus clause {k} is unsatisfiable")
        return a

    return up


class WitnessedReduction:
    """A formula transformation with per-deleted-clause witnesses."""

    name = "stage"

    def transform(self, phi: CnfFormula) -> CnfFormula:
        return self._built(phi).formula

    def clause_trace(self, phi: CnfFormula) -> tuple[int | None, ...]:
        """Originating input clause of each output clause (None when fresh)."""
        return self._built(phi).trace

    def witness(self, phi: CnfFormula, c: int, upstream: Upstream | None = None) -> Assignment:
        built = self._built(phi)
        if not 0 <= c < built.formula.num_clauses:
            raise IndexError(f"no output clause {c}")
        return self._witness(built, c, upstream or solving_upstream(phi))

    def _built(self, phi: CnfFormula) -> "_Built":
        return _build_cached(self, phi)

    def _build(self, phi: CnfFormula) -> "_Built":
        raise NotImplementedError

    def _witness(self, built: "_Built", c: int, upstream: Upstream) -> Assignment:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__}>"


@dataclass(frozen=True, eq=False)
class _Built:
    source: CnfFormula
    formula: CnfFormula
    trace: tuple[int | None, ...]
    info: object = None


@lru_cache(maxsize=512)
def _build_cached(stage: WitnessedReduction, phi: CnfFormula) -> _Built:
    return stage._build(phi)


def _extend(a: Assignment, size: int) -> list[bool]:
    out = list(a)
    out.extend([False] * (size - len(out)))
    return out


class ToAtMost3Cnf(WitnessedReduction):
    """Split every clause wider than three into a chain of short clauses.

    A clause ``l1 | ... | lw`` becomes ``(l1 | z1) & (~z1 | l2 | z2) & ... &
    (~z(w-1) | lw)`` with fresh splitter variables. Deleting the ``j``-th
    chain clause is answered by deleting the whole source clause upstream and
    setting ``z1..z(j-1)`` true and the rest false.
    """

    name = "to_at_most_3cnf"

    def _build(self, phi: CnfFormula) -> _Built:
        n = phi.variable_count
        roles = list(roles_of(phi))
        out: list[Clause] = []
        trace: list[int] = []
        chains: dict[int, tuple[int, list[int]]] = {}  # clause -> (first out idx, z vars)
        for i, clause in enumerate(phi.clauses):
            w = len(clause)
            if w <= 3:
                out.append(clause)
                trace.append(i)
                continue
            zs = list(range(n, n + w - 1))
            n += w - 1
            roles.extend(VarRole("splitter", i, j) for j in range(w - 1))
            chains[i] = (len(out), zs)
            out.append((clause[0], Literal(zs[0])))
            for j in range(1, w - 1):
                out.append((Literal(zs[j - 1], False), clause[j], Literal(zs[j])))
            out.append((Literal(zs[w - 2], False), clause[w - 1]))
            trace.extend([i] * w)
        formula = CnfFormula(n, tuple(out), tuple(roles))
        return _Built(phi, formula, tuple(trace), chains)

    def _witness(self, built: _Built, c: int, upstream: Upstream) -> Assignment:
        src = built.trace[c]
        a = _extend(upstream(src), built.formula.variable_count)
        for i, (first, zs) in built.info.items():
            if i == src:
                cut = c - first
            else:
                cut = next(
                    (p for p, l in enumerate(built.source.clauses[i]) if l.value(a)), None
                )
                if cut is None:
                    raise WitnessError(f"upstream assignment falsifies clause {i}")
            for j, z in enumerate(zs):
                a[z] = j < cut
        return tuple(a)


class LimitOccurrences(WitnessedReduction):
    """Give every occurrence its own variable copy, linked by an implication chain.

    Positive occurrences of ``x`` take copies ``1..a``, negative ones
    ``a+1..a+b``; clauses ``(~x_j | x_(j+1))`` chain them. Input clauses
    must have at most three literals over distinct variables.
    """

    name = "limit_occurrences"

    def _build(self, phi: CnfFormula) -> _Built:
        for i, clause in enumerate(phi.clauses):
            if len(clause) > 3 or len({l.var for l in clause}) != len(clause):
                raise NotE3Cnf(f"clause {i} needs at most 3 literals over distinct variables")
        pos: dict[int, list[tuple[int, int]]] = {}
        neg: dict[int, list[tuple[int, int]]] = {}
        for i, clause in enumerate(phi.clauses):
            for p, l in enumerate(clause):
                (pos if l.positive else neg).setdefault(l.var, []).append((i, p))
        new_var: dict[tuple[int, int], int] = {}  # (clause, position) -> copy var
        copies: dict[int, list[int]] = {}  # source var -> copy vars in chain order
        roles: list[VarRole] = []
        for x in range(phi.variable_count):
            occ = pos.get(x, []) + neg.get(x, [])
            chain = []
            for j, where in enumerate(occ):
                new_var[where] = len(roles)
                chain.append(len(roles))
                roles.append(VarRole("copy", x, j))
            if chain:
                copies[x] = chain
        out: list[Clause] = []
        trace: list[int | None] = []
        for i, clause in enumerate(phi.clauses):
            out.append(tuple(Literal(new_var[(i, p)], l.positive) for p, l in enumerate(clause)))
            trace.append(i)
        links: dict[int, tuple[int, int]] = {}  # out idx -> (source var, j)
        for x, chain in copies.items():
            for j in range(len(chain) - 1):
                links[len(out)] = (x, j)
                out.append((Literal(chain[j], False), Literal(chain[j + 1])))
                trace.append(None)
        formula = CnfFormula(len(roles), tuple(out), tuple(roles))
        occurrences = {x: pos.get(x, []) + neg.get(x, []) for x in copies}
        info = (copies, links, occurrences, {x: len(pos.get(x, [])) for x in copies})
        return _Built(phi, formula, tuple(trace), info)

    def _witness(self, built: _Built, c: int, upstream: Upstream) -> Assignment:
        copies, links, occurrences, n_pos = built.info
        src = built.trace[c]
        flip: tuple[int, bool] | None = None
        if src is None:
            # A broken implication link between copies j and j+1 of x. Free the
            # copy on the side that can satisfy its own clause, and delete that
            # clause upstream instead.
            x, j = links[c]
            if j < n_pos[x]:
                src = occurrences[x][j][0]
                up = upstream(src)
                if not up[x]:
                    flip = (copies[x][j], True)
            else:
                src = occurrences[x][j + 1][0]
                up = upstream(src)
                if up[x]:
                    flip = (copies[x][j + 1], False)
        else:
            up = upstream(src)
        a = [False] * built.formula.variable_count
        for x, chain in copies.items():
            for v in chain:
                a[v] = up[x]
        if flip is not None:
            a[flip[0]] = flip[1]
        return tuple(a)


class PadToE3(WitnessedReduction):
    """Pad one- and two-literal clauses to exactly three with fresh variables."""

    name = "pad_to_e3"

    def _build(self, phi: CnfFormula) -> _Built:
        n = phi.variable_count
        roles = list(roles_of(phi))
        out: list[Clause] = []
        trace: list[int] = []
        groups: dict[int, tuple[int, list[int]]] = {}
        for i, clause in enumerate(phi.clauses):
            w = len(clause)
            if w > 3:
                raise ClauseTooWide(f"clause {i} has {w} literals")
            if w == 3:
                out.append(clause)
                trace.append(i)
                continue
            if w == 2:
                y = n
                n += 1
                roles.append(VarRole("padding", i, 0))
                groups[i] = (len(out), [y])
                out.append(clause + (Literal(y),))
                out.append(clause + (Literal(y, False),))
                trace.extend([i, i])
            else:
                y, z = n, n + 1
                n += 2
                roles.extend([VarRole("padding", i, 0), VarRole("padding", i, 1)])
                groups[i] = (len(out), [y, z])
                (l,) = clause
                for sy, sz in ((True, True), (False, True), (True, False), (False, False)):
                    out.append((l, Literal(y, sy), Literal(z, sz)))
                trace.extend([i] * 4)
        formula = CnfFormula(n, tuple(out), tuple(roles))
        return _Built(phi, formula, tuple(trace), groups)

    def _witness(self, built: _Built, c: int, upstream: Upstream) -> Assignment:
        src = built.trace[c]
        a = _extend(upstream(src), built.formula.variable_count)
        if src in built.info:
            # falsify the deleted sibling's padding literals; every other
            # sibling then has a true padding literal
            for l in built.formula.clauses[c]:
                if l.var >= built.source.variable_count:
                    a[l.var] = not l.positive
        return tuple(a)


class Pipeline(WitnessedReduction):
    """Left-to-right composition of witnessed reductions."""

    def __init__(self, *stages: WitnessedReduction):
        self.stages = stages
        self.name = " -> ".join(s.name for s in stages)

    def levels(self, phi: CnfFormula) -> list[CnfFormula]:
        out = [phi]
        for s in self.stages:
            out.append(s.transform(out[-1]))
        return out

    def transform(self, phi: CnfFormula) -> CnfFormula:
        return self.levels(phi)[-1]

    def clause_trace(self, phi: CnfFormula) -> tuple[int | None, ...]:
        levels = self.levels(phi)
        trace: list[int | None] = list(range(levels[-1].num_clauses))
        for stage, src in reversed(list(zip(self.stages, levels))):
            t = stage.clause_trace(src)
            trace = [None if k is None else t[k] for k in trace]
        return tuple(trace)

    def witness(self, phi: CnfFormula, c: int, upstream: Upstream | None = None) -> Assignment:
        levels = self.levels(phi)
        base = upstream or solving_upstream(phi)

        def at(level: int, k: int) -> Assignment:
            up = base if level == 0 else (lambda j: at(level - 1, j))
            return self.stages[level].witness(levels[level], k, up)

        return at(len(self.stages) - 1, c)


to_at_most_3cnf = ToAtMost3Cnf()
limit_occurrences = LimitOccurrences()
pad_to_e3 = PadToE3()
