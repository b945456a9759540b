"""XOR-to-CNF translation for solvers without native XOR support.

A long XOR over k > w variables is chunked into width-w XORs linked by
ceil((k-w)/(w-2)) fresh auxiliary variables (each aux is defined as
the XOR of one chunk, so auxiliaries are functionally determined and
projecting them away preserves the model set exactly).
Each width-j XOR with parity p is then expanded into the 2^(j-1)
clauses forbidding the assignments of wrong parity.

The default width 4 trades clause blowup (2^(w-1) clauses per chunk)
against auxiliary-variable count.
"""

from __future__ import annotations

from .formula import Clause, XorConstraint

DEFAULT_WIDTH = 4


def _direct_clauses(variables: list[int], parity: int) -> list[Clause]:
    """All 2^(j-1) clauses forbidding wrong-parity assignments."""
    j = len(variables)
    out = []
    for mask in range(1 << j):
        if bin(mask).count("1") % 2 == parity:
            continue  # this assignment satisfies the XOR
        out.append(tuple(v if not (mask >> i) & 1 else -v for i, v in enumerate(variables)))
    return out


def translate_xors(
    xors, next_aux_id: int, width: int = DEFAULT_WIDTH
) -> tuple[list[Clause], int]:
    """CNF clauses satisfiability-equivalent to the given XOR constraints.

    Returns the clauses and the next free auxiliary variable id.
    Fresh auxiliaries are allocated at and above ``next_aux_id``.
    """
    if width < 3:
        # each chunk consumes width-1 variables but reintroduces one
        # auxiliary, so width 2 would make no progress
        raise ValueError("chunk width must be >= 3")
    clauses: list[Clause] = []
    aux = next_aux_id
    for x in xors:
        if not isinstance(x, XorConstraint):
            raise TypeError(f"expected XorConstraint, got {type(x).__name__}")
        vs = sorted(x.variables)
        if not vs:
            if x.parity == 1:
                clauses.append(())  # unsatisfiable constant
            continue
        while len(vs) > width:
            chunk, vs = vs[: width - 1], vs[width - 1 :]
            # aux := XOR(chunk), i.e. XOR(chunk + [aux]) = 0
            clauses.extend(_direct_clauses(chunk + [aux], 0))
            vs.insert(0, aux)
            aux += 1
        clauses.extend(_direct_clauses(vs, x.parity))
    return clauses, aux
