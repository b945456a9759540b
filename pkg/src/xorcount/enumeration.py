"""Bounded projected model enumeration via iterated SAT with blocking clauses.

Counts up to ``bound`` distinct scope-restrictions of models: solve,
block the found restriction with a clause over scope variables only,
repeat.  Returns min(projected count, bound) without issuing a SAT
query beyond the one that would exceed the bound (Core's query budget
depends on this: exactly value+1 queries when the bound is not hit,
exactly ``bound`` when it is).
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Assignment, Clause, Formula
from .sat import SatOracle, SolverTimeout


@dataclass(frozen=True)
class BoundedCount:
    """min(projected count, bound); hit_bound reports which side won."""

    value: int
    hit_bound: bool

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("count cannot be negative")


class EnumerationTimeout(SolverTimeout):
    """Backend timeout during enumeration; carries the partial count."""

    def __init__(self, partial: int, cause: SolverTimeout):
        super().__init__(str(cause))
        self.partial = partial


def blocking_clause(model: Assignment, scope) -> Clause:
    """Clause satisfied exactly by assignments differing from ``model``
    on at least one scope variable (literal polarity flips the model).

    Empty scope yields the empty clause: the unique empty-scope
    restriction was just counted, so everything else is blocked.
    """
    lits = []
    for v in scope:
        if v not in model:
            raise ValueError(f"scope variable {v} not assigned in model")
        lits.append(-v if model[v] else v)
    return tuple(lits)


def bounded_count(f: Formula, bound: int, oracle: SatOracle) -> BoundedCount:
    """Count up to ``bound`` models of f projected onto its scope."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if bound == 0:
        return BoundedCount(0, hit_bound=True)
    session = oracle.open_session(f)
    return bounded_count_in_session(session, f.scope, bound)


def bounded_count_in_session(session, scope, bound: int) -> BoundedCount:
    """Enumeration loop over an already-open session (clauses persist)."""
    if bound == 0:
        return BoundedCount(0, hit_bound=True)
    k = 0
    while True:
        try:
            model = session.solve()
        except SolverTimeout as exc:
            raise EnumerationTimeout(k, exc)
        if model is None:
            return BoundedCount(k, hit_bound=False)
        k += 1
        if k >= bound:
            return BoundedCount(k, hit_bound=True)
        session.add_clause(blocking_clause(model, scope))
