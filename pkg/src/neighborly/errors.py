"""Exception hierarchy shared across the package."""


class NeighborlyError(Exception):
    """Base class for every error raised by this package."""


class InvalidModification(NeighborlyError):
    pass


class NotAnEdge(NeighborlyError):
    pass


class ParseError(NeighborlyError):
    def __init__(self, message: str, line: int | None = None, position: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"byte {position}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.position = position


class CnfError(NeighborlyError):
    pass


class EmptyClause(CnfError):
    pass


class ClauseTooWide(CnfError):
    pass


class NotE3Cnf(CnfError):
    pass


class Tautology(CnfError):
    pass


class TooFewVariables(CnfError):
    pass


class IncompleteAssignment(CnfError):
    pass


class WitnessError(NeighborlyError):
    """A witness construction met a state its correctness argument excludes."""


class NotSatisfying(NeighborlyError):
    pass


class Timeout(NeighborlyError):
    pass


class EmptyGraph(NeighborlyError):
    pass


class EmptyInput(NeighborlyError):
    pass


class KTooSmall(NeighborlyError):
    pass


class NotATriangle(NeighborlyError):
    pass


class IsolatedVertex(NeighborlyError):
    pass


class NotUniversalEdged(NeighborlyError):
    pass


class OracleBudgetExceeded(NeighborlyError):
    pass


class NoProgress(NeighborlyError):
    pass
