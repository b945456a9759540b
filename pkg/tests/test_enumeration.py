import random

import pytest

from conftest import random_formula
from xorcount.enumeration import (
    BoundedCount,
    blocking_clause,
    bounded_count,
    bounded_count_in_session,
)
from xorcount.exact import exact_projected_count
from xorcount.formula import Formula


def test_blocking_clause_flips_scope_polarities():
    model = {1: True, 2: False, 3: True, 4: False}
    assert blocking_clause(model, (1, 2, 4)) == (-1, 2, 4)
    assert blocking_clause(model, ()) == ()
    with pytest.raises(ValueError):
        blocking_clause({1: True}, (2,))


def test_bounded_count_rejects_negative_bound(builtin_oracle):
    with pytest.raises(ValueError):
        bounded_count(Formula(num_vars=1, scope=(1,)), -1, builtin_oracle)


def test_bound_zero_short_circuits(builtin_oracle):
    got = bounded_count(Formula(num_vars=1, scope=(1,)), 0, builtin_oracle)
    assert got == BoundedCount(0, hit_bound=True)


def test_unsat_formula_counts_zero(builtin_oracle):
    f = Formula(num_vars=1, clauses=((1,), (-1,)), scope=(1,))
    assert bounded_count(f, 10, builtin_oracle) == BoundedCount(0, hit_bound=False)


def test_empty_scope_counts_satisfiability(builtin_oracle):
    sat = Formula(num_vars=2, clauses=((1,),), scope=())
    assert bounded_count(sat, 5, builtin_oracle).value == 1
    unsat = Formula(num_vars=1, clauses=((1,), (-1,)), scope=())
    assert bounded_count(unsat, 5, builtin_oracle).value == 0


def test_agrees_with_exact_oracle(builtin_oracle):
    rnd = random.Random(55)
    for _ in range(100):
        f = random_formula(rnd, max_vars=8)
        true = exact_projected_count(f, builtin_oracle).value
        loose = bounded_count(f, 2 ** len(f.scope) + 1, builtin_oracle)
        assert loose == BoundedCount(true, hit_bound=False)


def test_min_of_count_and_bound(builtin_oracle):
    rnd = random.Random(56)
    for _ in range(40):
        f = random_formula(rnd, max_vars=7)
        true = exact_projected_count(f, builtin_oracle).value
        for bound in sorted({1, max(1, true), true + 1, true + 5}):
            got = bounded_count(f, bound, builtin_oracle)
            assert got.value == min(true, bound)
            assert got.hit_bound == (true >= bound)


def test_monotone_in_bound(builtin_oracle):
    rnd = random.Random(57)
    for _ in range(20):
        f = random_formula(rnd, max_vars=6)
        values = [bounded_count(f, b, builtin_oracle).value for b in range(0, 10)]
        assert values == sorted(values)
        assert all(v <= b for b, v in enumerate(values))


def test_query_budget(builtin_oracle):
    # value+1 queries when the bound is not hit, exactly bound when it is
    rnd = random.Random(58)
    for _ in range(40):
        f = random_formula(rnd, max_vars=7, min_scope=1)
        true = exact_projected_count(f, builtin_oracle).value
        for bound in (1, true + 1, true + 4):
            if bound < 1:
                continue
            session = builtin_oracle.open_session(f)
            got = bounded_count_in_session(session, f.scope, bound)
            if got.hit_bound:
                assert session.stats.queries == bound
            else:
                assert session.stats.queries == got.value + 1


def test_session_reuse_continues_counting(builtin_oracle):
    f = Formula(num_vars=3, scope=(1, 2, 3))  # 8 projected models
    session = builtin_oracle.open_session(f)
    first = bounded_count_in_session(session, f.scope, 3)
    assert first == BoundedCount(3, hit_bound=True)
    # blocked models stay blocked, but the bound-hitting model was not
    # blocked, so it is found again
    rest = bounded_count_in_session(session, f.scope, 10)
    assert first.value - 1 + rest.value == 8
