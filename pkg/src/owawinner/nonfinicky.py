"""Algorithms for non-finicky utilities and OWAs with a short nonzero prefix.

These exploit utilities where every agent rates many items highly (Borda
utilities, generous approval ballots).  Each agent gets ``ell`` free slots;
an item fills a slot of every agent with a free slot who ranks it among
their top ``x`` items.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

from ._validation import as_fraction, check_unit_interval
from .analysis import segmented_bound, slots_bound
from .exact import DEFAULT_BUDGET, brute_force
from .model import SolveReport, WinnerSet, nonfinicky_beta
from .owa import classify, geometric_truncation_length, gprog_ratio


@dataclass(frozen=True)
class SlotsState:
    """Slot ledger after one iteration of :func:`slots_greedy`.

    ``free[j]`` is agent j's number of free slots; ``occupied[j]`` lists
    ``(item, slot)`` pairs with 1-based slot numbers.
    """

    item: int
    coverage: int
    free: tuple
    occupied: tuple
    x: int

    @property
    def total_free(self):
        return sum(self.free)


@dataclass(frozen=True)
class SegmentStep:
    iteration: int
    picked: tuple
    survivors: tuple
    window: tuple


def rank_matrix(utilities):
    """rank[j][a] = number of items agent j values strictly above a (0 is best)."""
    return tuple(
        tuple(sum(1 for v in row if v > row[a]) for a in range(len(row)))
        for row in utilities.u
    )


def preference_orders(utilities):
    """Items sorted by decreasing utility per agent; ties by lower index."""
    return tuple(
        tuple(sorted(range(len(row)), key=lambda a: (-row[a], a)))
        for row in utilities.u
    )


def _check_prefix(instance, ell):
    cls = classify(instance.owa.alpha)
    if ell is None:
        ell = cls.nonzero_prefix_len
    ell = int(ell)
    if ell < 1:
        raise ValueError("ell must be positive")
    if cls.nonzero_prefix_len > ell:
        raise ValueError(
            f"OWA has {cls.nonzero_prefix_len} leading nonzero entries, more than ell={ell}")
    return ell, cls


def _beta_or_none(utilities, gamma):
    if utilities.u_max == 0:
        return None
    return nonfinicky_beta(utilities, gamma)


def slots_greedy(instance, gamma, ell=None):
    """Free-slot greedy for nonincreasing OWAs whose nonzero entries fit in ``ell`` slots.

    With ``x = floor(gamma * m)``, each iteration picks the unused item that
    fills the most free slots (ties by lowest index).  When no item fills a
    slot, the lowest-index unused item is taken.

    Returns
    -------
    SolveReport
        ``trace`` holds a :class:`SlotsState` per iteration; ``guarantee`` is
        ``beta * (1 - exp(-gamma' K / ell))`` with ``gamma' = x / m``.
    """
    gamma = check_unit_interval("gamma", gamma, open_low=True)
    ell, cls = _check_prefix(instance, ell)
    m, n, K = instance.m, instance.n, instance.K
    x = math.floor(gamma * m)
    if x < ell:
        raise ValueError(f"gamma too small for ell: floor(gamma*m) = {x} < ell = {ell}")
    rank = rank_matrix(instance.utilities)
    free = [ell] * n
    occupied = [[] for _ in range(n)]
    chosen = []
    trace = []
    for _ in range(K):
        best, best_cov = None, -1
        for a in range(m):
            if a in chosen:
                continue
            cov = sum(1 for j in range(n) if free[j] > 0 and rank[j][a] < x)
            if cov > best_cov:
                best, best_cov = a, cov
        for j in range(n):
            if free[j] > 0 and rank[j][best] < x:
                occupied[j].append((best, ell - free[j] + 1))
                free[j] -= 1
        chosen.append(best)
        trace.append(SlotsState(best, best_cov, tuple(free),
                                tuple(tuple(o) for o in occupied), x))

    winners = WinnerSet.of(instance, chosen)
    gamma_eff = Fraction(x, m)
    beta = _beta_or_none(instance.utilities, gamma_eff)
    notes = []
    guarantee = None
    if not cls.nonincreasing:
        notes.append("no guarantee: OWA is not nonincreasing")
    elif beta is None:
        notes.append("no guarantee: all utilities are zero")
    else:
        guarantee = slots_bound(float(beta), float(gamma_eff), K, ell)
    return SolveReport("slots", winners, guarantee, tuple(trace), tuple(notes),
                       {"x": x, "ell": ell, "beta": beta, "gamma": gamma_eff,
                        "order": tuple(chosen)})


def free_slot_ceiling(n, ell, x, m, iteration):
    """Upper bound ell*n*(1 - x/(ell*m))**i on the free slots left after iteration i."""
    return ell * n * (1 - Fraction(x, ell * m)) ** iteration


def segmented_solve(instance, gamma, ell=None):
    """Segment-by-segment covering for OWAs with nonzero entries on the top ``ell`` positions.

    With ``x = floor(gamma * m / ell)``, iteration i covers as many surviving
    agents as possible with at most ``floor(K / ell)`` items that those
    agents place at positions ``(i-1)x+1 .. ix`` of their preference order.
    Agents covered in every iteration survive; the union of the picks is
    padded with the lowest-index unused items up to K.
    """
    gamma = check_unit_interval("gamma", gamma, open_low=True)
    ell, _ = _check_prefix(instance, ell)
    m, n, K = instance.m, instance.n, instance.K
    if K < ell:
        raise ValueError(f"K = {K} is smaller than ell = {ell}")
    x = math.floor(gamma * m / ell)
    if x < 1:
        raise ValueError(f"gamma too small for ell: floor(gamma*m/ell) = {x} < 1")
    per_iteration = K // ell
    orders = preference_orders(instance.utilities)
    position = [{a: p for p, a in enumerate(order)} for order in orders]

    survivors = set(range(n))
    selected = []
    trace = []
    for i in range(1, ell + 1):
        lo, hi = (i - 1) * x, i * x
        picked = []
        covered = set()
        for _ in range(per_iteration):
            best, best_cov = None, 0
            for a in range(m):
                if a in picked:
                    continue
                cov = sum(1 for j in survivors - covered if lo <= position[j][a] < hi)
                if cov > best_cov:
                    best, best_cov = a, cov
            if best is None:
                break
            picked.append(best)
            covered |= {j for j in survivors if lo <= position[j][best] < hi}
        survivors = covered
        for a in picked:
            if a not in selected:
                selected.append(a)
        trace.append(SegmentStep(i, tuple(picked), tuple(sorted(survivors)), (lo + 1, hi)))

    padding = [a for a in range(m) if a not in selected][: K - len(selected)]
    winners = WinnerSet.of(instance, selected + padding)
    gamma_eff = Fraction(ell * x, m)
    K_eff = ell * per_iteration
    beta = _beta_or_none(instance.utilities, gamma_eff)
    guarantee = None
    notes = []
    if beta is None:
        notes.append("no guarantee: all utilities are zero")
    else:
        guarantee = segmented_bound(float(beta), float(gamma_eff), K_eff, ell)
    if padding:
        notes.append(f"padded with {len(padding)} item(s)")
    return SolveReport("segmented", winners, guarantee, tuple(trace), tuple(notes),
                       {"x": x, "ell": ell, "beta": beta, "gamma": gamma_eff,
                        "survivors": len(survivors)})


def gprog_ptas(instance, epsilon, gamma, p=None, budget=DEFAULT_BUDGET):
    """(1 - epsilon)-approximation scheme for geometric-progression OWAs.

    The OWA is truncated after ``l = ceil(log_p(2/epsilon))`` entries, which
    keeps a ``1 - epsilon/2`` share of its weight.  Large committees (where
    ``l * exp(-gamma K / l^2) < epsilon / 2``) go to :func:`segmented_solve`
    on the truncated OWA; smaller ones are solved exactly.  The returned
    committee is always scored under the full OWA.
    """
    epsilon = check_unit_interval("epsilon", epsilon, open_low=True, open_high=True)
    gamma = check_unit_interval("gamma", gamma, open_low=True)
    alpha = instance.owa.alpha
    inferred = gprog_ratio(alpha)
    if inferred is None:
        raise ValueError("OWA is not a geometric progression")
    if p is not None and as_fraction(p) != inferred:
        raise ValueError(f"OWA has ratio {inferred}, not p = {p}")
    p = inferred
    K, m = instance.K, instance.m
    ell = min(geometric_truncation_length(p, epsilon), K)
    truncated = instance.with_owa(alpha[:ell] + (Fraction(0),) * (K - ell))
    tail = ell * math.exp(-float(gamma) * K / ell**2)
    use_segmented = tail < float(epsilon) / 2 and math.floor(gamma * m / ell) >= 1
    details = {"ell": ell, "p": p, "tail": tail}
    if use_segmented:
        sub = segmented_solve(truncated, gamma, ell)
        winners = WinnerSet.of(instance, sub.items)
        guarantee = None if sub.guarantee is None else (1 - float(epsilon) / 2) * sub.guarantee
        details.update(branch="segmented", truncated_score=sub.score)
        return SolveReport("gprog-ptas", winners, guarantee, sub.trace, sub.notes, details)
    winners = brute_force(instance, budget)
    details.update(branch="brute")
    return SolveReport("gprog-ptas", winners, 1.0, (), ("brute-force path",), details)
