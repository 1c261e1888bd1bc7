"""Seeded random utility profiles.

All generators draw from numpy's PCG64 bit generator, whose streams are
identical across platforms for a given seed.
"""

import numpy as np

from .model import Instance, UtilityMatrix, approval_profile, borda_profile
from .owa import parse_family

KINDS = ("uniform", "approval", "borda")


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def make_uniform(n, m, max_utility=10, seed=None):
    """Integer utilities drawn uniformly from ``0..max_utility``."""
    rng = _rng(seed)
    return UtilityMatrix(rng.integers(0, max_utility + 1, size=(n, m)).tolist())


def make_approval(n, m, rate=0.5, seed=None):
    """Each agent approves each item independently with probability ``rate``."""
    rng = _rng(seed)
    mask = rng.random((n, m)) < rate
    return approval_profile([np.flatnonzero(row).tolist() for row in mask], m)


def make_borda(n, m, seed=None):
    """Borda utilities from uniformly random rankings."""
    rng = _rng(seed)
    return borda_profile([rng.permutation(m).tolist() for _ in range(n)])


def make_utilities(kind, n, m, seed=None, **kwargs):
    if kind == "uniform":
        return make_uniform(n, m, seed=seed, **kwargs)
    if kind == "approval":
        return make_approval(n, m, seed=seed, **kwargs)
    if kind == "borda":
        return make_borda(n, m, seed=seed)
    raise ValueError(f"unknown profile kind {kind!r}; expected one of {', '.join(KINDS)}")


def make_instance(kind, n, m, K, owa="harmonic", seed=None, **kwargs):
    """Random instance; ``owa`` is a family spec such as ``"kbest 2"``."""
    return Instance(make_utilities(kind, n, m, seed=seed, **kwargs), parse_family(owa, K))
