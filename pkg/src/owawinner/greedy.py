"""Greedy and reduction-based approximation algorithms.

``greedy_solve`` is the classic submodular greedy: it grows the committee
one item at a time, scoring partial committees with the matching prefix
of the OWA vector.  For nonincreasing OWAs the set function is monotone
submodular, so the result is within ``1 - 1/e`` of optimal.
"""

from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
import math

from .exact import DEFAULT_BUDGET, _integer_form, brute_force, top_items_by_column_sum
from .model import SolveReport, WinnerSet
from .owa import best_prefix_length, classify, hurwicz_lambda, make_owa
from ._validation import check_unit_interval

GREEDY_RATIO = 1 - 1 / math.e


@dataclass(frozen=True)
class GreedyStep:
    """One greedy iteration: the gains of every remaining item and the pick."""

    item: int
    gains: dict
    running_score: Fraction


def greedy_solve(instance):
    """Greedy committee selection with prefix-OWA marginal gains.

    Ties go to the lowest item index.  OWAs that are not nonincreasing are
    accepted, but the report then carries no guarantee.

    Returns
    -------
    SolveReport
        ``trace`` holds one :class:`GreedyStep` per iteration.
    """
    rows, alpha, scale = _integer_form(instance)
    m, K = instance.m, instance.K
    # per agent: chosen utilities kept sorted ascending
    chosen_vals = [[] for _ in rows]
    chosen = []
    current = 0
    trace = []
    for ell in range(1, K + 1):
        prefix = alpha[:ell]
        gains = {}
        for a in range(m):
            if a in chosen:
                continue
            total = 0
            for i, row in enumerate(rows):
                vals = sorted(chosen_vals[i] + [row[a]], reverse=True)
                total += sum(c * v for c, v in zip(prefix, vals))
            gains[a] = total - current
        best = max(gains, key=lambda a: (gains[a], -a))
        current += gains[best]
        chosen.append(best)
        for i, row in enumerate(rows):
            insort(chosen_vals[i], row[best])
        trace.append(GreedyStep(best, {a: g * scale for a, g in gains.items()}, current * scale))

    winners = WinnerSet.of(instance, chosen)
    notes = ()
    guarantee = GREEDY_RATIO
    if not classify(instance.owa.alpha).nonincreasing:
        guarantee = None
        notes = ("no guarantee: OWA is not nonincreasing",)
    return SolveReport("greedy", winners, guarantee, tuple(trace), notes,
                       {"order": tuple(chosen)})


def _one_best(K):
    return make_owa("kbest", K, 1)


def hurwicz_solve(instance, inner="greedy", gamma=None, budget=DEFAULT_BUDGET):
    """Solve a Hurwicz[lambda] instance through its 1-best companion.

    The companion instance keeps the utilities and replaces the OWA with
    ``<1, 0, ..., 0>``; ``inner`` (``greedy``, ``brute`` or ``slots``)
    solves it, and the resulting set is scored under the Hurwicz OWA.  A
    beta-approximate inner solver yields a lambda*beta guarantee.
    """
    lam = hurwicz_lambda(instance.owa.alpha)
    if lam is None:
        raise ValueError("OWA does not have the Hurwicz shape <lambda, 0, ..., 0, 1-lambda>")
    companion = instance.with_owa(_one_best(instance.K))
    if inner == "greedy":
        sub = greedy_solve(companion)
        inner_ratio = sub.guarantee
    elif inner == "brute":
        sub = SolveReport("brute", brute_force(companion, budget), 1.0)
        inner_ratio = 1.0
    elif inner == "slots":
        from .nonfinicky import slots_greedy

        if gamma is None:
            raise ValueError("inner solver 'slots' needs gamma")
        sub = slots_greedy(companion, gamma, 1)
        inner_ratio = sub.guarantee
    else:
        raise ValueError(f"unknown inner solver {inner!r}")
    winners = WinnerSet.of(instance, sub.items)
    guarantee = None if inner_ratio is None else float(lam) * inner_ratio
    return SolveReport("hurwicz", winners, guarantee, sub.trace, sub.notes,
                       {"lambda": lam, "inner": inner, "inner_score": sub.score})


def kbest_proxy_ratio(alpha):
    """Guaranteed ratio sum(alpha) / (K * alpha_1) of the K-best proxy."""
    alpha = tuple(alpha)
    return Fraction(sum(alpha)) / (len(alpha) * alpha[0])


def kbest_proxy_solve(instance):
    """Solve the constant-OWA companion exactly and score under the true OWA."""
    alpha = instance.owa.alpha
    if not classify(alpha).nonincreasing:
        raise ValueError("kbest_proxy_solve needs a nonincreasing OWA")
    if alpha[0] <= 0:
        raise ValueError("kbest_proxy_solve needs alpha_1 > 0")
    ratio = kbest_proxy_ratio(alpha)
    winners = WinnerSet.of(instance, top_items_by_column_sum(instance, instance.K))
    return SolveReport("kbest-proxy", winners, float(ratio), details={"ratio": ratio})


def ptas_solve(instance, epsilon, budget=DEFAULT_BUDGET):
    """(1 - epsilon)-approximation for (K - f)-best OWAs.

    When ``(K - f) / K >= 1 - epsilon`` the K-best proxy already achieves the
    ratio; otherwise the committee is found by exhaustive search.
    """
    epsilon = check_unit_interval("epsilon", epsilon, open_low=True, open_high=True)
    k = best_prefix_length(instance.owa.alpha)
    if k is None:
        raise ValueError("ptas_solve needs a (K-f)-best OWA <c, ..., c, 0, ..., 0>")
    K = instance.K
    ratio = Fraction(k, K)
    if ratio >= 1 - epsilon:
        report = kbest_proxy_solve(instance)
        return SolveReport("ptas", report.winners, float(ratio), (), ("K-best path",),
                           {"branch": "kbest", "f": K - k, "ratio": ratio})
    winners = brute_force(instance, budget)
    return SolveReport("ptas", winners, 1.0, (), ("brute-force path",),
                       {"branch": "brute", "f": K - k, "ratio": ratio})
