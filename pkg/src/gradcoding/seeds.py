"""Deterministic seed derivation for all stochastic components.

Every draw in this package flows from Philox, a counter-based generator
with a fixed, versioned algorithm, so results are reproducible across
machines. Child streams are split by integer paths rather than by
consuming parent state, which keeps parallel execution order irrelevant.
"""

from __future__ import annotations

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Philox generator for one integer seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def derive_seed(seed: int, *path: int) -> int:
    """Stable child seed for (seed, path...). Same inputs give the same output."""
    entropy = (int(seed),) + tuple(int(p) for p in path)
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])
