"""Strongly 3-universal XOR hash functions over Z_2.

A hash function h: Z_2^n -> Z_2^m is an affine map defined by an
m-bit offset vector and an m x n coefficient matrix over Z_2:
row i of h(z) is ``offset[i] XOR parity(matrix[i] AND z)``.  Sampling
all m*(n+1) bits uniformly samples uniformly from the family, which is
strongly 3-universal: any three distinct keys receive independent
uniform hash values.

The counter always selects the all-ones cell: the predicate
``h(z) = 1^m`` is turned into m XOR constraints over the projection
scope and conjoined to the formula being counted.

Bit draw order is part of the reproducibility contract: rows in order,
each row drawing its offset bit first and then its n coefficient bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .formula import Formula, XorConstraint
from .randomness import RandomSource


@dataclass(frozen=True)
class XorHashFunction:
    """Immutable affine XOR hash map; n = key length, m = output rows."""

    n: int
    m: int
    offsets: np.ndarray  # shape (m,), uint8
    matrix: np.ndarray  # shape (m, n), uint8

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.offsets.shape != (self.m,) or self.matrix.shape != (self.m, self.n):
            raise ValueError("bit array shapes inconsistent with (n, m)")

    def __eq__(self, other):
        return (
            isinstance(other, XorHashFunction)
            and self.n == other.n
            and self.m == other.m
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.matrix, other.matrix)
        )


def sample_hash(n: int, m: int, rng: RandomSource) -> XorHashFunction:
    """Sample h uniformly from the family by drawing m*(n+1) fair bits."""
    if m < 1:
        raise ValueError("m must be >= 1")
    bits = rng.bits(m * (n + 1)).reshape(m, n + 1)
    return XorHashFunction(
        n=n,
        m=m,
        offsets=np.ascontiguousarray(bits[:, 0]),
        matrix=np.ascontiguousarray(bits[:, 1:]),
    )


def apply_hash(h: XorHashFunction, key) -> np.ndarray:
    """Evaluate h on a key bit vector of length n; returns m bits."""
    key = np.asarray(key, dtype=np.uint8)
    if key.shape != (h.n,):
        raise ValueError(f"key length {key.shape} does not match n={h.n}")
    return (h.offsets ^ (h.matrix @ key.astype(np.uint64) & 1).astype(np.uint8)) & 1


def to_xor_constraints(h: XorHashFunction, scope_order) -> list[XorConstraint]:
    """XOR constraints equivalent to the predicate h(z) = 1^m.

    ``scope_order`` supplies the variable behind each key position.
    Row i holds iff offset[i] XOR (XOR of selected variables) = 1,
    i.e. the selected variables must XOR to ``1 XOR offset[i]``.
    Rows with no selected variables are kept as constant constraints
    (tautology or contradiction) so the output always has m entries.
    """
    scope_order = tuple(scope_order)
    if len(scope_order) != h.n:
        raise ValueError(f"scope length {len(scope_order)} does not match n={h.n}")
    out = []
    for i in range(h.m):
        vs = frozenset(scope_order[j] for j in range(h.n) if h.matrix[i, j])
        out.append(XorConstraint(variables=vs, parity=1 ^ int(h.offsets[i])))
    return out


def conjoin_hash(f: Formula, h: XorHashFunction) -> Formula:
    """The formula restricted to the distinguished hash cell.

    Appends the h(z)=1^m constraints over f's scope; clauses and scope
    are unchanged, so the result's projected models are exactly f's
    projected models that hash to the all-ones cell.
    """
    if h.n != len(f.scope):
        raise ValueError(f"hash key length {h.n} does not match scope size {len(f.scope)}")
    return f.with_xors(to_xor_constraints(h, f.scope))
