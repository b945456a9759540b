"""Shared fixtures and corpus helpers for the test suite."""

import random
import sys

import pytest

from xorcount.formula import Formula, XorConstraint
from xorcount.sat import BuiltinOracle


def random_formula(rnd: random.Random, max_vars=10, with_xors=True, min_scope=0):
    """A small random CNF(+XOR) formula with a random projection scope."""
    nv = rnd.randint(max(1, min_scope), max_vars)
    clauses = []
    for _ in range(rnd.randint(0, 2 * nv)):
        width = rnd.randint(1, 3)
        clauses.append(
            tuple(rnd.choice((-1, 1)) * rnd.randint(1, nv) for _ in range(width))
        )
    xors = []
    if with_xors:
        for _ in range(rnd.randint(0, 3)):
            size = rnd.randint(0, min(4, nv))
            xors.append(
                XorConstraint(frozenset(rnd.sample(range(1, nv + 1), size)), rnd.randint(0, 1))
            )
    scope = tuple(sorted(rnd.sample(range(1, nv + 1), rnd.randint(min_scope, nv))))
    return Formula(num_vars=nv, clauses=tuple(clauses), xors=tuple(xors), scope=scope)


@pytest.fixture(scope="session")
def builtin_oracle():
    return BuiltinOracle()


@pytest.fixture(scope="session")
def checked_oracle():
    """Built-in backend that asserts every model it returns."""
    return BuiltinOracle(check_models=True)


@pytest.fixture(scope="session")
def solver_bin(tmp_path_factory):
    """Wrapper script exposing the bundled solver as an external binary
    (reads DIMACS with native 'x' XOR lines, prints s/v output)."""
    path = tmp_path_factory.mktemp("shim") / "xorsolver"
    path.write_text(f'#!/bin/sh\nexec {sys.executable} -m xorcount.minisolve "$1"\n')
    path.chmod(0o755)
    return str(path)
