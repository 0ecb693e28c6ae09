"""Bounded-variable integer linear feasibility by depth-first search.

Every variable has finite bounds.  The search assigns variables in the order
they were declared, trying values in ascending order, and after each
assignment tightens all bounds to a fixpoint with interval reasoning on each
constraint.  The first solution found is therefore the lexicographically
least feasible point.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .errors import IlpBudgetExceeded, InputError

RELATIONS = ("<=", "==", ">=")
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class Variable:
    name: str
    lower: int
    upper: int


@dataclass
class Constraint:
    """``sum(coef * x) <relation> rhs`` with sparse or dense coefficients."""

    coefficients: Mapping[int, int] | Sequence[int]
    relation: str
    rhs: int

    def terms(self) -> list[tuple[int, int]]:
        if isinstance(self.coefficients, Mapping):
            items = self.coefficients.items()
        else:
            items = enumerate(self.coefficients)
        return [(v, a) for v, a in items if a]


@dataclass
class IlpInstance:
    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)

    def add_variable(self, name: str, lower: int, upper: int) -> int:
        self.variables.append(Variable(name, lower, upper))
        return len(self.variables) - 1

    def add_constraint(
        self, coefficients: Mapping[int, int] | Sequence[int], relation: str, rhs: int
    ) -> None:
        self.constraints.append(Constraint(coefficients, relation, rhs))

    def validate(self) -> None:
        p = len(self.variables)
        for var in self.variables:
            if var.lower > var.upper:
                raise InputError(f"variable {var.name} has empty range")
        for i, con in enumerate(self.constraints):
            if con.relation not in RELATIONS:
                raise InputError(f"constraint {i} has unknown relation {con.relation!r}")
            if not isinstance(con.coefficients, Mapping) and len(con.coefficients) != p:
                raise InputError(f"constraint {i} has {len(con.coefficients)} coefficients for {p} variables")
            for v, _ in con.terms():
                if not 0 <= v < p:
                    raise InputError(f"constraint {i} references unknown variable {v}")

    def satisfied_by(self, values: Sequence[int]) -> bool:
        for var, x in zip(self.variables, values):
            if not var.lower <= x <= var.upper:
                return False
        for con in self.constraints:
            total = sum(a * values[v] for v, a in con.terms())
            if con.relation == "<=" and total > con.rhs:
                return False
            if con.relation == ">=" and total < con.rhs:
                return False
            if con.relation == "==" and total != con.rhs:
                return False
        return True


class _Propagator:
    def __init__(self, ilp: IlpInstance):
        self.rows = []
        self.var_rows: list[list[int]] = [[] for _ in ilp.variables]
        for con in ilp.constraints:
            terms = con.terms()
            lo = con.rhs if con.relation in ("==", ">=") else None
            hi = con.rhs if con.relation in ("==", "<=") else None
            idx = len(self.rows)
            self.rows.append((terms, lo, hi))
            for v, _ in terms:
                self.var_rows[v].append(idx)

    def run(self, lb: list[int], ub: list[int], pending: list[int]) -> bool:
        rows = self.rows
        var_rows = self.var_rows
        queued = set(pending)
        queue = list(pending)
        while queue:
            c = queue.pop()
            queued.discard(c)
            terms, lo, hi = rows[c]
            smin = smax = 0
            for v, a in terms:
                if a > 0:
                    smin += a * lb[v]
                    smax += a * ub[v]
                else:
                    smin += a * ub[v]
                    smax += a * lb[v]
            if (hi is not None and smin > hi) or (lo is not None and smax < lo):
                return False
            slack_hi = None if hi is None else hi - smin
            slack_lo = None if lo is None else smax - lo
            span = max_span(terms, lb, ub)
            if (slack_hi is None or slack_hi >= span) and (slack_lo is None or slack_lo >= span):
                continue
            changed = False
            for v, a in terms:
                lo_v, hi_v = lb[v], ub[v]
                if a > 0:
                    if slack_hi is not None:
                        hi_v = min(hi_v, lb[v] + slack_hi // a)
                    if slack_lo is not None:
                        lo_v = max(lo_v, ub[v] - slack_lo // a)
                else:
                    if slack_hi is not None:
                        lo_v = max(lo_v, ub[v] - slack_hi // -a)
                    if slack_lo is not None:
                        hi_v = min(hi_v, lb[v] + slack_lo // -a)
                if lo_v > hi_v:
                    return False
                if lo_v != lb[v] or hi_v != ub[v]:
                    lb[v], ub[v] = lo_v, hi_v
                    changed = True
                    for d in var_rows[v]:
                        if d != c and d not in queued:
                            queued.add(d)
                            queue.append(d)
            if changed and c not in queued:
                queued.add(c)
                queue.append(c)
        return True


def max_span(terms, lb, ub) -> int:
    return max((abs(a) * (ub[v] - lb[v]) for v, a in terms), default=0)


def solve_feasibility(
    ilp: IlpInstance, budget: int = DEFAULT_BUDGET, stats: dict | None = None
) -> list[int] | None:
    """Lexicographically least feasible integer point, or None if there is none.

    ``budget`` caps the number of search nodes; exceeding it raises
    :class:`IlpBudgetExceeded` rather than returning a verdict.
    """
    ilp.validate()
    p = len(ilp.variables)
    prop = _Propagator(ilp)
    lb = [var.lower for var in ilp.variables]
    ub = [var.upper for var in ilp.variables]
    nodes = 0

    def record():
        if stats is not None:
            stats["ilp_nodes"] = stats.get("ilp_nodes", 0) + nodes

    if not prop.run(lb, ub, list(range(len(prop.rows)))):
        record()
        return None

    def next_free(start: int, lb, ub) -> int:
        for v in range(start, p):
            if lb[v] < ub[v]:
                return v
        return p

    first = next_free(0, lb, ub)
    if first == p:
        record()
        assert ilp.satisfied_by(lb)
        return lb
    stack = [[lb, ub, first, lb[first]]]
    while stack:
        frame = stack[-1]
        f_lb, f_ub, var, value = frame
        if value > f_ub[var]:
            stack.pop()
            continue
        frame[3] = value + 1
        nodes += 1
        if nodes > budget:
            record()
            raise IlpBudgetExceeded(f"feasibility search exceeded {budget} nodes")
        lb2 = f_lb[:]
        ub2 = f_ub[:]
        lb2[var] = ub2[var] = value
        if not prop.run(lb2, ub2, list(prop.var_rows[var])):
            continue
        nxt = next_free(var + 1, lb2, ub2)
        if nxt == p:
            record()
            assert ilp.satisfied_by(lb2)
            return lb2
        stack.append([lb2, ub2, nxt, lb2[nxt]])
    record()
    return None
