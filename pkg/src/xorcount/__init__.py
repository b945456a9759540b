"""Probabilistic projected model counting for CNF formulas.

Given a CNF formula, a projection scope, a tolerance epsilon and a
confidence 1-delta, the counter returns an estimate of the projected
model count that lies within a (1 +/- epsilon) band around the true
count with probability at least 1-delta.

Submodules are imported explicitly by users (``xorcount.counter``,
``xorcount.formula``, ...); the top-level package stays import-light so
that helper scripts such as ``python -m xorcount.minisolve`` start fast.
"""

__version__ = "0.1.0"
