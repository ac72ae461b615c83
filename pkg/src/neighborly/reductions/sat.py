"""From unsatisfiability to minimal unsatisfiability, with easy witnesses.

:func:`pw_transform` adds one selector variable per clause so that every
one-clause-deleted subformula has a satisfying assignment that can be
written down directly. :func:`f_transform` follows it with the three
form-constraint stages so the result is E3CNF again.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from ..cnf import (
    Assignment,
    CnfFormula,
    Literal,
    Pipeline,
    Upstream,
    VarRole,
    WitnessedReduction,
    _Built,
    is_tautology,
    limit_occurrences,
    pad_to_e3,
    roles_of,
    to_at_most_3cnf,
)
from ..errors import EmptyInput, NotE3Cnf, Tautology, TooFewVariables, WitnessError


class ClauseKind(NamedTuple):
    """``main`` (i), ``blocker`` (i, j) or ``pair`` (i, j); indices 0-based."""

    kind: str
    i: int
    j: int = -1


@dataclass(frozen=True)
class PwOutput:
    formula: CnfFormula
    selector_vars: tuple[int, ...]
    clause_kind: tuple[ClauseKind, ...]


class PwStage(WitnessedReduction):
    """The selector construction as a pipeline stage.

    Clause order: main clauses ``C_i | pi_i``, then blockers
    ``~l_ij | pi_i | ~y_i`` grouped by clause, then pairs ``~y_i | ~y_j``
    lexicographically, where ``pi_i`` is the disjunction of every selector
    except ``y_i``.
    """

    name = "pw"

    def _build(self, phi: CnfFormula) -> _Built:
        if not phi.clauses:
            raise EmptyInput("formula has no clauses")
        if phi.variable_count < 2:
            raise TooFewVariables("need at least two variables")
        for i, c in enumerate(phi.clauses):
            if is_tautology(c):
                raise Tautology(f"clause {i} contains a variable and its negation")
        n, m = phi.variable_count, phi.num_clauses
        ys = tuple(range(n, n + m))
        roles = roles_of(phi) + tuple(VarRole("selector", i) for i in range(m))

        def pi(i: int) -> tuple[Literal, ...]:
            return tuple(Literal(y) for k, y in enumerate(ys) if k != i)

        clauses: list[tuple[Literal, ...]] = []
        kinds: list[ClauseKind] = []
        for i, c in enumerate(phi.clauses):
            clauses.append(c + pi(i))
            kinds.append(ClauseKind("main", i))
        for i, c in enumerate(phi.clauses):
            for j, l in enumerate(c):
                clauses.append((-l,) + pi(i) + (Literal(ys[i], False),))
                kinds.append(ClauseKind("blocker", i, j))
        for i, j in combinations(range(m), 2):
            clauses.append((Literal(ys[i], False), Literal(ys[j], False)))
            kinds.append(ClauseKind("pair", i, j))
        out = PwOutput(CnfFormula(n + m, tuple(clauses), roles), ys, tuple(kinds))
        trace = tuple(k.i if k.kind != "pair" else None for k in kinds)
        return _Built(phi, out.formula, trace, out)

    def _witness(self, built: _Built, c: int, upstream: Upstream) -> Assignment:
        out: PwOutput = built.info
        kind = out.clause_kind[c]
        a = [False] * out.formula.variable_count
        if kind.kind == "pair":
            a[out.selector_vars[kind.i]] = True
            a[out.selector_vars[kind.j]] = True
            return tuple(a)
        a[out.selector_vars[kind.i]] = True
        clause = built.source.clauses[kind.i]
        for j, l in enumerate(clause):
            make_true = kind.kind == "blocker" and j == kind.j
            a[l.var] = l.positive if make_true else not l.positive
        return tuple(a)


pw_stage = PwStage()


def pw_transform(phi: CnfFormula) -> PwOutput:
    """Selector construction; ``phi`` must be tautology-free with at least two variables."""
    return pw_stage._built(phi).info


def pw_witness(phi: CnfFormula, c: int) -> Assignment:
    return pw_stage.witness(phi, c, _no_upstream)


def _no_upstream(k: int) -> Assignment:
    raise WitnessError("the selector stage needs no upstream witness")


f_pipeline = Pipeline(pw_stage, to_at_most_3cnf, limit_occurrences, pad_to_e3)


def _prepared(phi: CnfFormula) -> CnfFormula:
    if not phi.is_e3cnf():
        raise NotE3Cnf("input must be nonempty E3CNF")
    if phi.num_clauses == 1:
        # a lone selector never occurs positively; a duplicate clause fixes that
        return CnfFormula(phi.variable_count, phi.clauses * 2, phi.var_roles)
    return phi


@lru_cache(maxsize=256)
def f_transform(phi: CnfFormula) -> CnfFormula:
    """E3CNF to E3CNF whose one-clause-deleted subformulas all have known witnesses."""
    out = f_pipeline.transform(_prepared(phi))
    if not out.is_e3cnf():
        raise WitnessError("pipeline output is not E3CNF")
    missing = 2 * out.variable_count - len(out.literal_occurrences())
    if missing:
        raise WitnessError(f"{missing} literals never occur in the output")
    return out


def f_clause_trace(phi: CnfFormula) -> tuple[int | None, ...]:
    """Index of the input clause each output clause descends from."""
    return f_pipeline.clause_trace(_prepared(phi))


def sat_witness(phi: CnfFormula, c: int) -> Assignment:
    """Assignment satisfying ``f_transform(phi)`` minus clause ``c``, built without search."""
    f_transform(phi)
    return _sat_witness(phi, c)


@lru_cache(maxsize=4096)
def _sat_witness(phi: CnfFormula, c: int) -> Assignment:
    return f_pipeline.witness(_prepared(phi), c, _no_upstream)
