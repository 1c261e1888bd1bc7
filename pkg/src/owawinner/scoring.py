"""Committee evaluation, greedy marginal gains and a submodularity checker.

Partial committees follow the prefix convention: a set ``W`` with
``|W| < K`` is scored with the first ``|W|`` OWA coefficients, and a set
with ``|W| >= K`` with the full vector applied to each agent's top K
items.  This is the set function the greedy algorithm maximizes.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from ._validation import BudgetExceededError, check_items
from .model import OwaVector

DEFAULT_SUBMODULAR_BUDGET = 3**12


@dataclass(frozen=True)
class ScoreBreakdown:
    total: Fraction
    per_agent: tuple
    per_agent_sorted_utilities: tuple


def owa_aggregate(alpha, values):
    """Apply OWA ``alpha`` to ``values`` (sorted nonincreasingly first)."""
    ordered = sorted(values, reverse=True)
    return sum((a * x for a, x in zip(alpha, ordered)), Fraction(0))


def committee_score(instance, W, owa_override=None):
    """Score committee ``W`` (0-based item indices) under the instance OWA.

    ``owa_override`` replaces the OWA vector; its length must equal ``|W|``.
    Pass a prefix of the instance OWA to score a partial committee.
    """
    items = check_items(W, instance.m)
    if owa_override is None:
        alpha = instance.owa.alpha
    elif isinstance(owa_override, OwaVector):
        alpha = owa_override.alpha
    else:
        alpha = tuple(owa_override)
    if len(alpha) != len(items):
        raise ValueError(f"committee size {len(items)} does not match OWA length {len(alpha)}")
    per_agent = []
    sorted_utils = []
    for row in instance.utilities.u:
        ordered = tuple(sorted((row[j] for j in items), reverse=True))
        sorted_utils.append(ordered)
        per_agent.append(sum((a * x for a, x in zip(alpha, ordered)), Fraction(0)))
    return ScoreBreakdown(sum(per_agent, Fraction(0)), tuple(per_agent), tuple(sorted_utils))


def score(instance, W):
    """Shorthand for ``committee_score(instance, W).total``."""
    return committee_score(instance, W).total


def set_value(instance, W):
    """Value of an arbitrary-size set under the prefix convention."""
    items = check_items(W, instance.m)
    alpha = instance.owa.padded(len(items))
    return committee_score(instance, items, owa_override=alpha).total


def marginal_gain(instance, W, a):
    """Gain of adding item ``a`` to ``W``: value(W + a) - value(W), prefix OWAs."""
    W = tuple(W)
    if a in W:
        raise ValueError(f"item a{a + 1} is already in the committee")
    if len(W) >= instance.K:
        raise ValueError(f"committee already has K={instance.K} items")
    return set_value(instance, W + (a,)) - set_value(instance, W)


@dataclass(frozen=True)
class Witness:
    """A violated submodularity triple: ``lhs < rhs`` where
    ``lhs = f(W + a) - f(W)`` and ``rhs = f(W' + a) - f(W')``."""

    W: tuple
    W_prime: tuple
    a: int
    lhs: Fraction
    rhs: Fraction


def _mask(items):
    m = 0
    for a in items:
        m |= 1 << a
    return m


def _all_subsets_lex(m):
    subsets = [()]
    for r in range(1, m + 1):
        subsets.extend(combinations(range(m), r))
    subsets.sort()
    return subsets


def check_submodular(instance, mode="exhaustive", sample_count=1000, seed=0,
                     budget=DEFAULT_SUBMODULAR_BUDGET, triples=None):
    """Search for a violation of submodularity of the prefix-convention set function.

    Parameters
    ----------
    mode : {"exhaustive", "sampled", "explicit"}
        ``exhaustive`` tests every triple ``W <= W'``, ``a not in W'`` in
        lexicographic order of (W', W, a); ``sampled`` draws ``sample_count``
        random triples; ``explicit`` tests only the given ``triples``.
    budget : int
        Maximum number of (W, W') pairs (3**m) allowed in exhaustive mode.

    Returns
    -------
    Witness or None
        The first violating triple found, or None if none was found.
    """
    m = instance.m
    cache = {}

    def value(items):
        key = _mask(items)
        if key not in cache:
            cache[key] = set_value(instance, items)
        return cache[key]

    def test(W, Wp, a):
        lhs = value(W + (a,)) - value(W)
        rhs = value(Wp + (a,)) - value(Wp)
        if lhs < rhs:
            return Witness(W, Wp, a, lhs, rhs)
        return None

    if mode == "exhaustive":
        if 3**m > budget:
            raise BudgetExceededError(f"exhaustive check needs 3^{m} = {3**m} pairs, budget {budget}")
        subsets = _all_subsets_lex(m)
        for Wp in subsets:
            outside = [a for a in range(m) if a not in Wp]
            if not outside:
                continue
            for W in subsets:
                if not set(W) <= set(Wp):
                    continue
                for a in outside:
                    w = test(W, Wp, a)
                    if w is not None:
                        return w
        return None

    if mode == "sampled":
        rng = np.random.default_rng(seed)
        for _ in range(int(sample_count)):
            in_wp = rng.random(m) < 0.5
            outside = np.flatnonzero(~in_wp)
            if outside.size == 0:
                continue
            a = int(rng.choice(outside))
            Wp = tuple(int(j) for j in np.flatnonzero(in_wp))
            W = tuple(j for j in Wp if rng.random() < 0.5)
            w = test(W, Wp, a)
            if w is not None:
                return w
        return None

    if mode == "explicit":
        if triples is None:
            raise ValueError("explicit mode needs triples")
        for W, Wp, a in triples:
            W, Wp = check_items(W, m), check_items(Wp, m)
            if not set(W) <= set(Wp) or a in Wp:
                raise ValueError(f"invalid triple W={W}, W'={Wp}, a={a}")
            w = test(W, Wp, int(a))
            if w is not None:
                return w
        return None

    raise ValueError(f"unknown mode {mode!r}")


__all__ = [
    "ScoreBreakdown", "Witness", "committee_score", "score", "set_value",
    "marginal_gain", "check_submodular", "owa_aggregate",
]
