"""CNF+XOR formulas with projection scopes, DIMACS I/O, assignment semantics.

Variables are 1-based integers (DIMACS convention) and literals are
signed integers: ``5`` means variable 5 is true, ``-5`` means it is
false.  A formula declares ``num_vars`` vocabulary variables; auxiliary
variables introduced later (e.g. by the XOR-to-CNF translation) live
above ``num_vars`` and are tracked by the ``total_vars`` watermark, so
scope membership is never ambiguous.

The projection scope is declared in DIMACS files via ``c ind v1 ... 0``
comment lines (a de-facto community convention); their union is the
scope.  Without any such line the scope defaults to all variables.
The scope may legally contain variables that appear in no clause; each
such free scope variable doubles the projected count.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

Clause = tuple[int, ...]
Assignment = dict[int, bool]


class DimacsError(ValueError):
    """Malformed DIMACS input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class XorConstraint:
    """XOR of a set of variables must equal ``parity``.

    Duplicate variables cancel pairwise, so the set representation is
    canonical.  The empty constraint is unsatisfiable for parity 1 and
    a tautology for parity 0.
    """

    variables: frozenset[int]
    parity: int

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError(f"parity must be 0 or 1, got {self.parity}")

    def holds(self, assignment: Assignment) -> bool:
        acc = 0
        for v in self.variables:
            acc ^= int(assignment[v])
        return acc == self.parity


@dataclass(frozen=True)
class Formula:
    """A CNF formula with optional XOR constraints and a projection scope.

    Immutable after construction; safe to share across threads.  The
    scope ordering is fixed (ascending) and defines the key-vector
    ordering used by hashing.
    """

    num_vars: int
    clauses: tuple[Clause, ...] = ()
    xors: tuple[XorConstraint, ...] = ()
    scope: tuple[int, ...] = ()
    total_vars: int = 0  # watermark incl. auxiliaries; 0 means num_vars

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        if self.total_vars == 0:
            object.__setattr__(self, "total_vars", self.num_vars)
        if self.total_vars < self.num_vars:
            raise ValueError("total_vars below num_vars")
        for v in self.scope:
            if not 1 <= v <= self.num_vars:
                raise ValueError(f"scope variable {v} out of range 1..{self.num_vars}")
        if list(self.scope) != sorted(set(self.scope)):
            raise ValueError("scope must be strictly ascending")

    def with_xors(self, xors) -> "Formula":
        return replace(self, xors=self.xors + tuple(xors))


def parse_dimacs(text: str | bytes) -> Formula:
    """Parse DIMACS CNF text into a Formula.

    Recognizes ``c ind v1 v2 ... 0`` scope lines; plain ``c`` comments
    are skipped.  User input is pure CNF: ``x`` (XOR) lines are
    rejected.  Raises DimacsError naming the line on malformed input.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")

    num_vars = None
    clauses: list[Clause] = []
    scope_vars: set[int] = set()
    saw_ind = False
    pending: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            toks = line.split()
            if len(toks) >= 2 and toks[1] == "ind":
                saw_ind = True
                for tok in toks[2:]:
                    try:
                        v = int(tok)
                    except ValueError:
                        raise DimacsError(f"non-integer token {tok!r} in scope line", lineno)
                    if v == 0:
                        continue
                    if v < 0:
                        raise DimacsError("negative variable in scope line", lineno)
                    scope_vars.add(v)
            continue
        if line.startswith("x"):
            raise DimacsError("XOR ('x') lines are not accepted in user input", lineno)
        if line.startswith("p"):
            toks = line.split()
            if num_vars is not None:
                raise DimacsError("duplicate header", lineno)
            if len(toks) != 4 or toks[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                num_vars = int(toks[2])
                int(toks[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno)
            if num_vars < 0:
                raise DimacsError("negative variable count", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"non-integer token {tok!r}", lineno)
            if lit == 0:
                clauses.append(tuple(pending))
                pending.clear()
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(f"variable {abs(lit)} out of range 1..{num_vars}", lineno)
                pending.append(lit)

    if num_vars is None:
        raise DimacsError("missing 'p cnf' header", len(text.splitlines()) + 1)
    if pending:
        raise DimacsError("unterminated clause at end of input", len(text.splitlines()))
    for v in scope_vars:
        if v > num_vars:
            raise DimacsError(f"scope variable {v} out of range 1..{num_vars}", 0)

    if saw_ind:
        scope = tuple(sorted(scope_vars))
    else:
        scope = tuple(range(1, num_vars + 1))
    return Formula(num_vars=num_vars, clauses=tuple(clauses), scope=scope)


def to_dimacs(f: Formula) -> str:
    """Serialize a Formula back to DIMACS (with ``c ind`` scope lines).

    XOR constraints, if any, are emitted as ``x`` lines (``x 1 2 -3 0``
    meaning the XOR of the literals is true) for solvers that read them
    natively.  Round trip with parse_dimacs is exact for XOR-free
    formulas.
    """
    out = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    if f.scope:
        out.append("c ind " + " ".join(str(v) for v in f.scope) + " 0")
    else:
        out.append("c ind 0")
    for cl in f.clauses:
        out.append(" ".join(str(l) for l in cl) + " 0")
    for x in f.xors:
        vs = sorted(x.variables)
        if not vs:
            # no literal form for a constant XOR; encode via parity trick
            # on a repeated variable is not possible, so emit a comment
            # plus, for the unsatisfiable case, an empty clause.
            if x.parity == 1:
                out.append("0")
            continue
        lits = [str(v) for v in vs]
        if x.parity == 0:
            lits[0] = "-" + lits[0]
        out.append("x " + " ".join(lits) + " 0")
    return "\n".join(out) + "\n"


def normalize(f: Formula) -> Formula:
    """Model-set-preserving cleanup.

    Deduplicates literals within clauses, drops tautological clauses,
    and cancels duplicate variables in XOR constraints (the set
    representation already does the latter).  Constant XOR constraints
    are kept; downstream treats the odd empty XOR as unsatisfiable.
    """
    clauses = []
    for cl in f.clauses:
        seen = dict.fromkeys(cl)
        lits = tuple(seen)
        if any(-l in seen for l in lits):
            continue  # tautology
        clauses.append(lits)
    return replace(f, clauses=tuple(clauses))


def evaluate(f: Formula, assignment: Assignment) -> bool:
    """Truth value of the formula under a total assignment.

    The assignment must cover every variable of the formula's
    vocabulary (1..num_vars plus any auxiliaries actually referenced).
    """
    for v in range(1, f.num_vars + 1):
        if v not in assignment:
            raise ValueError(f"assignment not total: variable {v} missing")
    for cl in f.clauses:
        if not any(assignment[abs(l)] == (l > 0) for l in cl):
            return False
    for x in f.xors:
        if not x.holds(assignment):
            return False
    return True


def restrict(assignment: Assignment, scope) -> Assignment:
    """Restriction of an assignment to a scope (must be a subset of its keys)."""
    out = {}
    for v in scope:
        if v not in assignment:
            raise ValueError(f"scope variable {v} not in assignment")
        out[v] = assignment[v]
    return out


def scope_key(assignment: Assignment, scope) -> tuple[int, ...]:
    """Bit vector of the assignment read in scope order (the hash key)."""
    return tuple(int(assignment[v]) for v in scope)
