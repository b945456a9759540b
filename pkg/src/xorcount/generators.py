"""Synthetic benchmark formulas with known projected counts.

Three families:

* ``free-k``: k unconstrained scope variables plus unit-pinned
  non-scope variables; projected count 2^k by construction.
* ``parity-chain``: equality chains copying scope variables, each link
  halving the number of total models while the projected count stays
  2^k; pure CNF, no XORs.
* ``random-3cnf``: random 3-clauses; the projected count is computed
  post hoc by the exact oracle and recorded in the manifest.

Each generated DIMACS file gets a JSON sidecar manifest recording the
known (or oracle-computed) projected count.
"""

from __future__ import annotations

import json
import os

from .exact import TRUTH_TABLE_LIMIT, exact_projected_count
from .formula import Formula, to_dimacs
from .randomness import RandomSource

FAMILIES = ("free-k", "parity-chain", "random-3cnf")


def free_k(k: int, pinned_vars: int = 1) -> tuple[Formula, int]:
    """k free scope variables, ``pinned_vars`` unit-pinned extras."""
    if k < 0 or pinned_vars < 0:
        raise ValueError("sizes must be non-negative")
    n = k + pinned_vars
    clauses = tuple((k + j + 1,) for j in range(pinned_vars))
    f = Formula(num_vars=n, clauses=clauses, scope=tuple(range(1, k + 1)))
    return f, 2**k


def parity_chain(k: int, links: int) -> tuple[Formula, int]:
    """k base scope vars plus ``links`` equality-chained copies.

    All variables are in scope; each copy is forced equal to a base
    variable, so the projected count remains 2^k.
    """
    if k < 1 or links < 0:
        raise ValueError("need k >= 1 and links >= 0")
    n = k + links
    clauses = []
    for i in range(links):
        a = (i % k) + 1
        b = k + i + 1
        clauses.append((-a, b))
        clauses.append((a, -b))
    f = Formula(num_vars=n, clauses=tuple(clauses), scope=tuple(range(1, n + 1)))
    return f, 2**k


def random_3cnf(
    num_vars: int, num_clauses: int, scope_size: int, seed: int
) -> tuple[Formula, int]:
    """Random 3-CNF; projected count computed by the exact oracle."""
    if num_vars > TRUTH_TABLE_LIMIT:
        raise ValueError(
            f"random-3cnf needs an oracle count; limited to {TRUTH_TABLE_LIMIT} variables"
        )
    if not 0 <= scope_size <= num_vars:
        raise ValueError("scope_size out of range")
    rng = RandomSource(seed)
    clauses = []
    for _ in range(num_clauses):
        # three distinct variables, random polarities
        lits = []
        while len(lits) < 3:
            bits = rng.bits(16)
            v = 1 + int.from_bytes(bits[:15].tobytes(), "little") % num_vars
            if v not in [abs(l) for l in lits]:
                lits.append(v if bits[15] else -v)
        clauses.append(tuple(lits))
    f = Formula(
        num_vars=num_vars, clauses=tuple(clauses), scope=tuple(range(1, scope_size + 1))
    )
    return f, exact_projected_count(f).value


def generate(family: str, out_dir: str, name: str, **params) -> dict:
    """Write <name>.cnf and <name>.json under out_dir; returns the manifest."""
    if family == "free-k":
        f, count = free_k(**params)
        method = "construction"
    elif family == "parity-chain":
        f, count = parity_chain(**params)
        method = "construction"
    elif family == "random-3cnf":
        f, count = random_3cnf(**params)
        method = "oracle"
    else:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    os.makedirs(out_dir, exist_ok=True)
    cnf_path = os.path.join(out_dir, name + ".cnf")
    with open(cnf_path, "w") as fh:
        fh.write(to_dimacs(f))
    manifest = {
        "file": name + ".cnf",
        "family": family,
        "params": params,
        "projected_count": count,
        "count_method": method,
        "num_vars": f.num_vars,
        "scope_size": len(f.scope),
    }
    with open(os.path.join(out_dir, name + ".json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest
