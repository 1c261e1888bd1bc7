"""Exact solvers: exhaustive enumeration and the polynomial K-best case."""

from fractions import Fraction
from itertools import combinations
from math import comb, lcm

from ._validation import BudgetExceededError
from .model import WinnerSet
from .owa import classify

DEFAULT_BUDGET = 2_000_000


def _integer_form(instance):
    """Utilities and OWA scaled to integers, plus the factor undoing the scaling."""
    rows = instance.utilities.u
    alpha = instance.owa.alpha
    du = lcm(*(v.denominator for row in rows for v in row))
    da = lcm(*(a.denominator for a in alpha))
    int_rows = [[int(v * du) for v in row] for row in rows]
    int_alpha = [int(a * da) for a in alpha]
    return int_rows, int_alpha, Fraction(1, du * da)


def enumerate_committees(instance, budget=DEFAULT_BUDGET):
    """Yield ``(items, score)`` for every size-K committee in lexicographic order."""
    m, K = instance.m, instance.K
    total = comb(m, K)
    if total > budget:
        raise BudgetExceededError(f"C({m}, {K}) = {total} committees exceeds budget {budget}")
    rows, alpha, scale = _integer_form(instance)
    for items in combinations(range(m), K):
        s = 0
        for row in rows:
            vals = sorted((row[j] for j in items), reverse=True)
            s += sum(a * v for a, v in zip(alpha, vals))
        yield items, s * scale


def brute_force(instance, budget=DEFAULT_BUDGET):
    """Optimal committee by trying all C(m, K) sets.

    Among optimal sets the lexicographically smallest index list wins.
    Raises :class:`BudgetExceededError` if C(m, K) exceeds ``budget``.
    """
    best_items, best_score = None, None
    for items, s in enumerate_committees(instance, budget):
        if best_score is None or s > best_score:
            best_items, best_score = items, s
    return WinnerSet.of(instance, best_items, best_score)


def kbest_solve(instance):
    """Optimal committee for a constant OWA: the K items with the largest column sums."""
    if not classify(instance.owa.alpha).constant:
        raise ValueError(
            "kbest_solve needs a constant OWA; use brute_force, greedy_solve or kbest_proxy_solve")
    return WinnerSet.of(instance, top_items_by_column_sum(instance, instance.K))


def top_items_by_column_sum(instance, K):
    sums = instance.utilities.column_sums()
    order = sorted(range(instance.m), key=lambda j: (-sums[j], j))
    return tuple(sorted(order[:K]))
