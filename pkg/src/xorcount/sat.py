"""Pluggable SAT oracles: built-in CDCL backend and external-solver adapter.

An oracle opens sessions; a session holds a loaded formula plus a
monotonically growing set of added clauses and answers SAT queries.
Sessions are single-owner (not thread-safe); oracles may be shared and
open sessions concurrently.

The built-in backend translates XOR constraints to CNF at session-open
time (Tseitin, see :mod:`xorcount.tseitin`) and runs the compiled
search kernel.  The external backend writes the accumulated formula to
a DIMACS file per solve() call and invokes ``<binary> <file>``,
emitting native ``x`` XOR lines when configured with that capability,
and parses SAT-competition style ``s``/``v`` output lines.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
from dataclasses import dataclass

import numpy as np

from . import kernel
from .formula import Assignment, Clause, Formula
from .tseitin import DEFAULT_WIDTH, translate_xors


class BackendError(RuntimeError):
    """External solver crashed or produced unparseable output."""


class SolverTimeout(RuntimeError):
    """Per-call time limit exceeded; distinct from unsat and from crashes."""


class ConfigurationError(RuntimeError):
    """Backend misconfiguration, e.g. a missing solver binary."""


@dataclass
class SessionStats:
    queries: int = 0
    conflicts: int = 0
    added_clauses: int = 0


class SatSession:
    """Abstract incremental SAT session over a loaded formula."""

    stats: SessionStats

    def solve(self) -> Assignment | None:
        """A total model of formula + added clauses, or None if unsat."""
        raise NotImplementedError

    def add_clause(self, clause: Clause) -> None:
        raise NotImplementedError


class SatOracle:
    """Session factory with capability flags."""

    native_xor = False

    def open_session(self, f: Formula) -> SatSession:
        raise NotImplementedError


class _BuiltinSession(SatSession):
    def __init__(self, f: Formula, xor_width: int, check_models: bool):
        self.formula = f
        self.check_models = check_models
        self.stats = SessionStats()
        xor_clauses, next_aux = translate_xors(f.xors, f.total_vars + 1, xor_width)
        self.total_vars = next_aux - 1
        self._has_empty = False
        # flat encoded clause database with capacity doubling
        self._pool = np.empty(256, dtype=np.int32)
        self._start = np.empty(64, dtype=np.int32)
        self._start[0] = 0
        self._ncl = 0
        for cl in f.clauses:
            self._push(cl)
        for cl in xor_clauses:
            self._push(cl)

    def _push(self, clause: Clause) -> None:
        lits = dict.fromkeys(clause)  # dedupe, keep order
        if any(-l in lits for l in lits):
            return  # tautology: no effect on the model set
        if not lits:
            self._has_empty = True
            return
        n = len(lits)
        while self._start[self._ncl] + n > len(self._pool):
            self._pool = np.concatenate([self._pool, np.empty(len(self._pool), dtype=np.int32)])
        if self._ncl + 1 >= len(self._start):
            self._start = np.concatenate([self._start, np.empty(len(self._start), dtype=np.int32)])
        base = self._start[self._ncl]
        for i, l in enumerate(lits):
            v = abs(l)
            if v > self.total_vars:
                raise ValueError(f"literal {l} references unknown variable")
            self._pool[base + i] = 2 * (v - 1) + (1 if l < 0 else 0)
        self._ncl += 1
        self._start[self._ncl] = base + n

    def add_clause(self, clause: Clause) -> None:
        self._push(tuple(clause))
        self.stats.added_clauses += 1

    def solve(self) -> Assignment | None:
        self.stats.queries += 1
        if self._has_empty:
            return None
        status, values, conflicts = kernel.search(
            self.total_vars, self._pool, self._start, self._ncl
        )
        self.stats.conflicts += int(conflicts)
        if status == kernel.UNSAT:
            return None
        model = {v: bool(values[v - 1]) for v in range(1, self.total_vars + 1)}
        if self.check_models:
            self._assert_model(model)
        return model

    def _assert_model(self, model: Assignment) -> None:
        for ci in range(self._ncl):
            sat = False
            for k in range(self._start[ci], self._start[ci + 1]):
                code = int(self._pool[k])
                if model[(code >> 1) + 1] == (code & 1 == 0):
                    sat = True
                    break
            assert sat, f"model violates clause {ci}"


class BuiltinOracle(SatOracle):
    """CDCL solver backend; XORs are translated to CNF at open time."""

    native_xor = False

    def __init__(self, xor_width: int = DEFAULT_WIDTH, check_models: bool = False):
        self.xor_width = xor_width
        self.check_models = check_models

    def open_session(self, f: Formula) -> SatSession:
        return _BuiltinSession(f, self.xor_width, self.check_models)


class _ExternalSession(SatSession):
    def __init__(self, f: Formula, oracle: "ExternalOracle"):
        self.oracle = oracle
        self.stats = SessionStats()
        if oracle.native_xor:
            self.formula = f
        else:
            xor_clauses, next_aux = translate_xors(f.xors, f.total_vars + 1, oracle.xor_width)
            self.formula = Formula(
                num_vars=f.num_vars,
                clauses=f.clauses + tuple(xor_clauses),
                xors=(),
                scope=f.scope,
                total_vars=next_aux - 1,
            )

    @property
    def total_vars(self) -> int:
        return self.formula.total_vars

    def add_clause(self, clause: Clause) -> None:
        self.formula = Formula(
            num_vars=self.formula.num_vars,
            clauses=self.formula.clauses + (tuple(clause),),
            xors=self.formula.xors,
            scope=self.formula.scope,
            total_vars=self.formula.total_vars,
        )
        self.stats.added_clauses += 1

    def _dimacs(self) -> str:
        f = self.formula
        # header must declare every variable incl. auxiliaries
        out = [f"p cnf {f.total_vars} {len(f.clauses)}"]
        for cl in f.clauses:
            out.append(" ".join(str(l) for l in cl) + " 0")
        for x in f.xors:
            vs = sorted(x.variables)
            if not vs:
                if x.parity == 1:
                    out.append("0")
                continue
            lits = [str(v) for v in vs]
            if x.parity == 0:
                lits[0] = "-" + lits[0]
            out.append("x " + " ".join(lits) + " 0")
        return "\n".join(out) + "\n"

    def solve(self) -> Assignment | None:
        self.stats.queries += 1
        with tempfile.NamedTemporaryFile(
            "w", suffix=".cnf", prefix="xorcount_", delete=False
        ) as fh:
            fh.write(self._dimacs())
            path = fh.name
        try:
            try:
                proc = subprocess.run(
                    [self.oracle.binary, *self.oracle.extra_args, path],
                    capture_output=True,
                    text=True,
                    timeout=self.oracle.timeout,
                )
            except subprocess.TimeoutExpired:
                raise SolverTimeout(
                    f"solver {self.oracle.binary!r} exceeded {self.oracle.timeout}s"
                )
            except FileNotFoundError:
                raise ConfigurationError(f"solver binary not found: {self.oracle.binary!r}")
            return self._parse(proc.stdout, proc.stderr)
        finally:
            os.unlink(path)

    def _parse(self, stdout: str, stderr: str) -> Assignment | None:
        status = None
        lits: list[int] = []
        for line in stdout.splitlines():
            line = line.strip()
            if line.startswith("s "):
                word = line.split(None, 1)[1].strip()
                if word == "SATISFIABLE":
                    status = True
                elif word == "UNSATISFIABLE":
                    status = False
            elif line.startswith("v "):
                for tok in line.split()[1:]:
                    try:
                        lit = int(tok)
                    except ValueError:
                        raise BackendError(f"unparseable value line token {tok!r}")
                    if lit != 0:
                        lits.append(lit)
        if status is None:
            raise BackendError(
                f"no solution line in solver output; stderr: {stderr.strip()[:500]}"
            )
        if status is False:
            return None
        model = {v: False for v in range(1, self.total_vars + 1)}
        for lit in lits:
            if abs(lit) <= self.total_vars:
                model[abs(lit)] = lit > 0
        return model


class ExternalOracle(SatOracle):
    """One solver process per solve() call, DIMACS in, s/v lines out."""

    def __init__(
        self,
        binary: str,
        native_xor: bool = False,
        timeout: float | None = None,
        xor_width: int = DEFAULT_WIDTH,
        extra_args: tuple[str, ...] = (),
    ):
        if not binary:
            raise ConfigurationError("external backend requires a solver binary path")
        self.binary = binary
        self.native_xor = native_xor
        self.timeout = timeout
        self.xor_width = xor_width
        self.extra_args = tuple(extra_args)

    def open_session(self, f: Formula) -> SatSession:
        return _ExternalSession(f, self)
