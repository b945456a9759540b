"""Independent brute-force projected model counter (ground truth for tests).

Two redundant methods that must agree wherever both apply:

* ``truth_table`` enumerates all total assignments (vectorized over
  bit-packed assignment indices) and counts distinct scope
  restrictions of models; needs total_vars <= 24.
* ``scope_sweep`` asks a SAT oracle, for each of the 2^|scope| scope
  assignments, whether it extends to a model; needs |scope| <= 24.

Deliberately shares nothing with the estimator beyond the formula
types, so it is a genuinely independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .formula import Formula

TRUTH_TABLE_LIMIT = 24
SCOPE_SWEEP_LIMIT = 24


@dataclass(frozen=True)
class ExactCount:
    value: int
    method: str  # "truth_table" | "scope_sweep"


def _truth_table_count(f: Formula) -> int:
    n = f.total_vars
    if n > TRUTH_TABLE_LIMIT:
        raise ValueError(f"truth_table limited to {TRUTH_TABLE_LIMIT} variables, got {n}")
    idx = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(1 << n, dtype=bool)
    for cl in f.clauses:
        if not cl:
            return 0
        sat = np.zeros(1 << n, dtype=bool)
        for l in cl:
            bit = (idx >> (abs(l) - 1)) & 1
            sat |= bit == (1 if l > 0 else 0)
        ok &= sat
    for x in f.xors:
        acc = np.zeros(1 << n, dtype=np.uint32)
        for v in x.variables:
            acc ^= (idx >> (v - 1)) & 1
        ok &= acc == x.parity
    models = idx[ok]
    if models.size == 0:
        return 0
    key = np.zeros(models.size, dtype=np.uint64)
    for pos, v in enumerate(f.scope):
        key |= (((models >> (v - 1)) & 1).astype(np.uint64)) << pos
    return int(np.unique(key).size)


def _scope_sweep_count(f: Formula, oracle) -> int:
    k = len(f.scope)
    if k > SCOPE_SWEEP_LIMIT:
        raise ValueError(f"scope_sweep limited to scope size {SCOPE_SWEEP_LIMIT}, got {k}")
    count = 0
    for bits in range(1 << k):
        units = tuple(
            (v,) if (bits >> pos) & 1 else (-v,) for pos, v in enumerate(f.scope)
        )
        pinned = Formula(
            num_vars=f.num_vars,
            clauses=f.clauses + units,
            xors=f.xors,
            scope=f.scope,
            total_vars=f.total_vars,
        )
        if oracle.open_session(pinned).solve() is not None:
            count += 1
    return count


def exact_projected_count(f: Formula, oracle=None) -> ExactCount:
    """Exact |models of f projected onto f.scope|; desk scale only.

    Uses truth_table when it fits, otherwise scope_sweep (which
    requires an oracle).
    """
    if f.total_vars <= TRUTH_TABLE_LIMIT:
        return ExactCount(_truth_table_count(f), "truth_table")
    if oracle is not None and len(f.scope) <= SCOPE_SWEEP_LIMIT:
        return ExactCount(_scope_sweep_count(f, oracle), "scope_sweep")
    raise ValueError(
        "formula exceeds exact-oracle limits "
        f"(total_vars={f.total_vars}, scope={len(f.scope)})"
    )
