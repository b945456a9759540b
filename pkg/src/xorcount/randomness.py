"""Seedable random bit source with derivable sub-streams.

Reproducibility contract: the same 64-bit seed and the same draw
sequence always produce the same bits, on any platform (PCG64 behind a
SeedSequence keyed on ``(seed, *stream path)``).  Sub-streams derived
for e.g. independent estimator repetitions are statistically
independent and do not advance the parent stream.
"""

from __future__ import annotations

import numpy as np


class RandomSource:
    """Deterministic pseudo-random bit generator.

    The counter requires explicit seeding everywhere; OS entropy is
    only ever used by the CLI to pick a seed when the user supplies
    none, and that seed is always reported.
    """

    def __init__(self, seed: int, _path: tuple[int, ...] = ()):
        self.seed = int(seed)
        self._path = _path
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((self.seed,) + _path))
        )

    def bits(self, count: int) -> np.ndarray:
        """Draw ``count`` independent uniform bits as a uint8 array."""
        return self._gen.integers(0, 2, size=count, dtype=np.uint8)

    def substream(self, index: int) -> "RandomSource":
        """Independent child stream; deterministic in (seed, path, index)."""
        return RandomSource(self.seed, self._path + (int(index),))

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, path={self._path})"
