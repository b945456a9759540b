import random

import pytest

from conftest import random_formula
from xorcount.enumeration import bounded_count
from xorcount.exact import exact_projected_count
from xorcount.formula import Formula, XorConstraint, evaluate
from xorcount.sat import (
    BackendError,
    BuiltinOracle,
    ConfigurationError,
    ExternalOracle,
    SolverTimeout,
)


def _script(tmp_path, body, name="fake_solver"):
    path = tmp_path / name
    path.write_text("#!/bin/sh\n" + body)
    path.chmod(0o755)
    return str(path)


def test_missing_binary_is_configuration_error(tmp_path):
    oracle = ExternalOracle(str(tmp_path / "does_not_exist"))
    session = oracle.open_session(Formula(num_vars=1, scope=(1,)))
    with pytest.raises(ConfigurationError):
        session.solve()


def test_empty_binary_rejected_up_front():
    with pytest.raises(ConfigurationError):
        ExternalOracle("")


def test_garbage_output_is_backend_error(tmp_path):
    oracle = ExternalOracle(_script(tmp_path, 'echo "hello world"\n'))
    session = oracle.open_session(Formula(num_vars=1, scope=(1,)))
    with pytest.raises(BackendError):
        session.solve()


def test_timeout_raises_solver_timeout(tmp_path):
    oracle = ExternalOracle(_script(tmp_path, "sleep 30\n"), timeout=0.2)
    session = oracle.open_session(Formula(num_vars=1, scope=(1,)))
    with pytest.raises(SolverTimeout):
        session.solve()


def test_unsat_output_parsed(tmp_path):
    oracle = ExternalOracle(_script(tmp_path, 'echo "s UNSATISFIABLE"\n'))
    assert oracle.open_session(Formula(num_vars=1, scope=(1,))).solve() is None


def test_value_lines_parsed_across_lines(tmp_path):
    body = 'echo "s SATISFIABLE"\necho "v 1 -2"\necho "v 3 0"\n'
    oracle = ExternalOracle(_script(tmp_path, body))
    model = oracle.open_session(Formula(num_vars=3, scope=(1, 2, 3))).solve()
    assert model == {1: True, 2: False, 3: True}


def test_bundled_solver_agrees_with_builtin(solver_bin):
    rnd = random.Random(2024)
    builtin = BuiltinOracle()
    external = ExternalOracle(solver_bin, native_xor=True, timeout=30)
    disagreements = 0
    for _ in range(40):
        f = random_formula(rnd, max_vars=8)
        got = external.open_session(f).solve()
        want = builtin.open_session(f).solve()
        if (got is None) != (want is None):
            disagreements += 1
        elif got is not None:
            assert evaluate(f, {v: got[v] for v in range(1, f.num_vars + 1)})
    assert disagreements == 0


def test_translated_mode_matches_native_mode(solver_bin):
    # without native XOR support the adapter pre-translates to pure CNF
    rnd = random.Random(31)
    native = ExternalOracle(solver_bin, native_xor=True, timeout=30)
    translated = ExternalOracle(solver_bin, native_xor=False, timeout=30)
    for _ in range(15):
        f = random_formula(rnd, max_vars=6)
        assert (native.open_session(f).solve() is None) == (
            translated.open_session(f).solve() is None
        )


def test_bounded_count_through_external_backend(solver_bin):
    rnd = random.Random(77)
    external = ExternalOracle(solver_bin, native_xor=True, timeout=30)
    for _ in range(10):
        f = random_formula(rnd, max_vars=7, min_scope=1)
        true = exact_projected_count(f, BuiltinOracle()).value
        got = bounded_count(f, 2 ** len(f.scope) + 1, external)
        assert got.value == true


def test_incremental_clauses_reach_external_solver(solver_bin):
    external = ExternalOracle(solver_bin, native_xor=True, timeout=30)
    session = external.open_session(Formula(num_vars=2, scope=(1, 2)))
    session.add_clause((1,))
    session.add_clause((-1,))
    assert session.solve() is None


def test_xor_lines_reach_native_solver(solver_bin):
    f = Formula(
        num_vars=12,
        xors=tuple(
            XorConstraint(frozenset({i, i + 1}), 1) for i in range(1, 12)
        ),
        scope=tuple(range(1, 13)),
    )
    external = ExternalOracle(solver_bin, native_xor=True, timeout=30)
    model = external.open_session(f).solve()
    assert model is not None
    assert evaluate(f, model)
