"""Core domain types: utilities, OWA vectors, instances and winner sets.

All numbers are held as :class:`fractions.Fraction` so that committee
scores on integer inputs are exact.  Item and agent indices are 0-based
here; the text formats and the CLI use 1-based names ``a1 .. am``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from ._validation import (
    as_fraction,
    check_committee_size,
    check_items,
    check_owa_vector,
    check_unit_interval,
    check_utilities,
)


@dataclass(frozen=True)
class UtilityMatrix:
    """An ``n x m`` matrix of nonnegative intrinsic utilities (agents x items)."""

    u: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", check_utilities(self.u))

    @property
    def n(self):
        return len(self.u)

    @property
    def m(self):
        return len(self.u[0])

    @property
    def u_max(self):
        """Highest utility any agent gives to any item."""
        return max(max(row) for row in self.u)

    def column_sums(self):
        return tuple(sum(row[j] for row in self.u) for j in range(self.m))

    def to_numpy(self, dtype=float):
        return np.array([[dtype(v) for v in row] for row in self.u])

    def __getitem__(self, key):
        i, j = key
        return self.u[i][j]


@dataclass(frozen=True)
class OwaVector:
    """A vector of K nonnegative OWA coefficients, best rank first.

    ``family`` is an optional human-readable label (e.g. ``"harmonic"``); it
    does not take part in equality.
    """

    alpha: tuple
    family: str = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_owa_vector(self.alpha))

    @property
    def k(self):
        return len(self.alpha)

    def __len__(self):
        return len(self.alpha)

    def __iter__(self):
        return iter(self.alpha)

    def __getitem__(self, idx):
        return self.alpha[idx]

    def is_zero(self):
        return all(a == 0 for a in self.alpha)

    def prefix(self, length):
        """The first ``length`` coefficients (the OWA used on partial committees)."""
        return self.alpha[:length]

    def padded(self, length):
        """Coefficients truncated or zero-extended to ``length`` entries."""
        if length <= self.k:
            return self.alpha[:length]
        return self.alpha + (Fraction(0),) * (length - self.k)


@dataclass(frozen=True)
class Instance:
    """An OWA-Winner instance: utilities, OWA vector and committee size K."""

    utilities: UtilityMatrix
    owa: OwaVector

    def __post_init__(self):
        if not isinstance(self.utilities, UtilityMatrix):
            object.__setattr__(self, "utilities", UtilityMatrix(self.utilities))
        if not isinstance(self.owa, OwaVector):
            object.__setattr__(self, "owa", OwaVector(tuple(self.owa)))
        check_committee_size(self.owa.k, self.utilities.m)
        if self.owa.is_zero():
            raise ValueError("OWA vector is all zeros")

    @classmethod
    def from_arrays(cls, utilities, alpha):
        return cls(UtilityMatrix(utilities), OwaVector(tuple(alpha)))

    @property
    def K(self):
        return self.owa.k

    @property
    def n(self):
        return self.utilities.n

    @property
    def m(self):
        return self.utilities.m

    def with_owa(self, alpha):
        """Companion instance with identical utilities and a different OWA."""
        if not isinstance(alpha, OwaVector):
            alpha = OwaVector(tuple(alpha))
        return Instance(self.utilities, alpha)


@dataclass(frozen=True)
class WinnerSet:
    """A size-K committee (sorted 0-based item indices) with its score."""

    items: tuple
    score: Fraction

    @classmethod
    def of(cls, instance, items, score=None):
        """Build a winner set for ``instance``, computing (or checking) its score."""
        from .scoring import committee_score

        items = check_items(items, instance.m)
        if len(items) != instance.K:
            raise ValueError(f"committee has {len(items)} items, expected K={instance.K}")
        actual = committee_score(instance, items).total
        if score is not None and as_fraction(score) != actual:
            raise ValueError(f"stated score {score} does not match committee score {actual}")
        return cls(items, actual)

    def labels(self):
        return [f"a{j + 1}" for j in self.items]

    def __str__(self):
        return f"{' '.join(self.labels())} / {format_number(self.score)}"


@dataclass(frozen=True)
class NonFinickyParams:
    """(beta, gamma): every agent values >= ceil(gamma*m) items at >= beta*u_max."""

    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", check_unit_interval("beta", self.beta))
        object.__setattr__(self, "gamma", check_unit_interval("gamma", self.gamma))


def format_number(x):
    """Render a Fraction as an integer, a terminating decimal, or ``p/q``."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        # terminating decimal; find the exact number of digits
        digits = 0
        y = x
        while y.denominator != 1:
            y *= 10
            digits += 1
        s = f"{abs(y.numerator) // 10**digits}.{abs(y.numerator) % 10**digits:0{digits}d}"
        return ("-" if x < 0 else "") + s
    return f"{x.numerator}/{x.denominator}"


def approval_profile(approvals, m):
    """0/1 utilities from per-agent approval sets (0-based item indices)."""
    m = int(m)
    if m < 1:
        raise ValueError("need at least one item")
    rows = []
    for i, approved in enumerate(approvals):
        row = [0] * m
        for a in approved:
            if not 0 <= a < m:
                raise IndexError(f"agent {i + 1} approves item index {a}, out of range [0, {m})")
            row[a] = 1
        rows.append(row)
    return UtilityMatrix(rows)


def borda_profile(rankings):
    """Borda utilities: the item at (1-based) position k of a ranking gets m - k."""
    rankings = [list(r) for r in rankings]
    if not rankings:
        raise ValueError("need at least one ranking")
    m = len(rankings[0])
    rows = []
    for i, ranking in enumerate(rankings):
        if sorted(ranking) != list(range(m)):
            raise ValueError(f"ranking of agent {i + 1} is not a permutation of 0..{m - 1}")
        row = [0] * m
        for position, item in enumerate(ranking, start=1):
            row[item] = m - position
        rows.append(row)
    return UtilityMatrix(rows)


def _threshold_count(gamma, m):
    return max(1, math.ceil(gamma * m))


def nonfinicky_beta(utilities, gamma):
    """Largest beta for which the utilities are (beta, gamma)-non-finicky.

    Each agent must have at least ``ceil(gamma * m)`` items with utility at
    least ``beta * u_max``; the answer is the minimum over agents of that
    agent's ``ceil(gamma * m)``-th largest utility, divided by ``u_max``.
    """
    if not isinstance(utilities, UtilityMatrix):
        utilities = UtilityMatrix(utilities)
    gamma = check_unit_interval("gamma", gamma)
    if gamma == 0:
        raise ValueError("gamma must be positive")
    u_max = utilities.u_max
    if u_max == 0:
        raise ValueError("no positive utility")
    t = _threshold_count(gamma, utilities.m)
    worst = min(sorted(row, reverse=True)[t - 1] for row in utilities.u)
    return Fraction(worst) / u_max


def nonfinicky_params(utilities, gamma):
    return NonFinickyParams(nonfinicky_beta(utilities, gamma), as_fraction(gamma))


@dataclass(frozen=True)
class SolveReport:
    """Solver output: the committee, the a-priori guarantee and a trace.

    ``guarantee`` is the approximation ratio the algorithm is known to achieve
    on this instance (1.0 for exact solvers), or None when no guarantee applies.
    """

    algorithm: str
    winners: WinnerSet
    guarantee: float = None
    trace: tuple = ()
    notes: tuple = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def items(self):
        return self.winners.items

    @property
    def score(self):
        return self.winners.score
