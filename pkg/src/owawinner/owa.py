"""OWA vector families, structural classification and geometric truncation."""

from dataclasses import dataclass
from fractions import Fraction

from ._validation import as_fraction, check_unit_interval
from .model import OwaVector

FAMILIES = ("kmed", "kbest", "aprog", "gprog", "harmonic", "hurwicz")

_ARITY = {"kmed": (1, 1), "kbest": (1, 1), "aprog": (1, 2), "gprog": (1, 1),
          "harmonic": (0, 0), "hurwicz": (1, 1)}


@dataclass(frozen=True)
class OwaClass:
    nonincreasing: bool
    constant: bool
    nonzero_prefix_len: int


def _int_param(name, value):
    f = as_fraction(value)
    if f.denominator != 1:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return int(f)


def make_owa(family, K, *params):
    """Build a member of a named OWA family with ``K`` coefficients.

    Families and parameters::

        kmed k        single 1 at position k
        kbest k       k ones, then zeros
        aprog a [b]   <a+(K-1)b, ..., a+b, a>, a >= 0, b > 0 (b defaults to 1)
        gprog p       <p^(K-1), ..., p, 1>, p > 1
        harmonic      <1, 1/2, ..., 1/K>
        hurwicz lam   <lam, 0, ..., 0, 1-lam>, K >= 2
    """
    family = family.lower()
    if family not in _ARITY:
        raise ValueError(f"unknown OWA family {family!r}; expected one of {', '.join(FAMILIES)}")
    lo, hi = _ARITY[family]
    if not lo <= len(params) <= hi:
        raise ValueError(f"family {family!r} takes {lo}..{hi} parameter(s), got {len(params)}")
    K = int(K)
    if K < 1:
        raise ValueError("K must be positive")
    zero, one = Fraction(0), Fraction(1)
    label = " ".join([family, *(str(p) for p in params)])

    if family in ("kmed", "kbest"):
        k = _int_param("k", params[0])
        if not 1 <= k <= K:
            raise ValueError(f"{family} needs 1 <= k <= K, got k={k}, K={K}")
        if family == "kmed":
            alpha = tuple(one if t == k - 1 else zero for t in range(K))
        else:
            alpha = tuple(one if t < k else zero for t in range(K))
    elif family == "aprog":
        a = as_fraction(params[0])
        b = as_fraction(params[1]) if len(params) > 1 else one
        if a < 0 or b <= 0:
            raise ValueError(f"aprog needs a >= 0 and b > 0, got a={a}, b={b}")
        alpha = tuple(a + (K - 1 - t) * b for t in range(K))
    elif family == "gprog":
        p = as_fraction(params[0])
        if p <= 1:
            raise ValueError(f"gprog needs p > 1, got {p}")
        alpha = tuple(p ** (K - 1 - t) for t in range(K))
    elif family == "harmonic":
        alpha = tuple(Fraction(1, t + 1) for t in range(K))
    else:
        lam = check_unit_interval("lambda", params[0])
        if K < 2:
            raise ValueError("hurwicz needs K >= 2")
        alpha = (lam,) + (zero,) * (K - 2) + (one - lam,)
    return OwaVector(alpha, family=label)


def parse_family(text, K):
    """``make_owa`` from a whitespace-separated spec such as ``"gprog 2"``."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty OWA family spec")
    return make_owa(tokens[0], K, *tokens[1:])


def classify(alpha):
    alpha = tuple(alpha)
    nonincreasing = all(alpha[t] >= alpha[t + 1] for t in range(len(alpha) - 1))
    constant = all(a == alpha[0] for a in alpha)
    nonzero = [t for t, a in enumerate(alpha) if a != 0]
    prefix_len = nonzero[-1] + 1 if nonzero else 1
    return OwaClass(nonincreasing, constant, prefix_len)


def best_prefix_length(alpha):
    """k if ``alpha`` is a positive multiple of k-best, else None."""
    alpha = tuple(alpha)
    c = alpha[0]
    if c <= 0:
        return None
    k = 0
    while k < len(alpha) and alpha[k] == c:
        k += 1
    if any(a != 0 for a in alpha[k:]):
        return None
    return k


def hurwicz_lambda(alpha):
    """lambda if ``alpha`` is a positive multiple of hurwicz[lambda], else None."""
    alpha = tuple(alpha)
    if len(alpha) < 2 or any(a != 0 for a in alpha[1:-1]):
        return None
    total = alpha[0] + alpha[-1]
    if total <= 0:
        return None
    return Fraction(alpha[0]) / total


def gprog_ratio(alpha):
    """p if ``alpha`` is a positive multiple of gprog[p] (K >= 2), else None."""
    alpha = tuple(alpha)
    if len(alpha) < 2 or alpha[-1] <= 0:
        return None
    p = Fraction(alpha[-2]) / alpha[-1]
    if p <= 1:
        return None
    K = len(alpha)
    c = alpha[-1]
    if all(alpha[t] == c * p ** (K - 1 - t) for t in range(K)):
        return p
    return None


def geometric_truncation_length(p, epsilon):
    """Smallest integer l with p**l >= 2/epsilon, i.e. ceil(log_p(2/epsilon)).

    Computed in exact arithmetic to avoid off-by-one errors at exact powers.
    """
    p = as_fraction(p)
    epsilon = check_unit_interval("epsilon", epsilon, open_low=True, open_high=True)
    if p <= 1:
        raise ValueError(f"p must exceed 1, got {p}")
    target = 2 / epsilon
    ell, power = 0, Fraction(1)
    while power < target:
        ell += 1
        power *= p
    return ell


def truncate_geometric(p, epsilon, K):
    """gprog[p] of length K with every coefficient past position l set to 0.

    The kept prefix carries at least a ``1 - epsilon/2`` share of the total
    weight.
    """
    ell = min(geometric_truncation_length(p, epsilon), int(K))
    full = make_owa("gprog", K, p).alpha
    alpha = full[:ell] + (Fraction(0),) * (len(full) - ell)
    return OwaVector(alpha, family=f"gprog {p} truncated {ell}")
