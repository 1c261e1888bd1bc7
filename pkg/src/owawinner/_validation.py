"""Input validation helpers shared by the solvers and the estimator."""

from fractions import Fraction
from decimal import Decimal
import numbers

import numpy as np

# Floats are snapped to the nearest fraction with a bounded denominator so
# that e.g. 2/3 * 6 floors to 4, not 3.
FLOAT_DENOMINATOR_LIMIT = 10**9


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed its configured budget."""


def as_fraction(value):
    """Convert a scalar (int, float, str, Decimal, Fraction, numpy scalar) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("boolean is not a valid numeric value")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not np.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value).limit_denominator(FLOAT_DENOMINATOR_LIMIT)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as a number")


def check_utilities(X):
    """Validate a utility matrix and return it as a tuple of Fraction rows.

    Accepts nested sequences or 2-d numpy arrays. Rejects negative entries
    and empty shapes.
    """
    if isinstance(X, np.ndarray):
        if X.ndim != 2:
            raise ValueError(f"expected a 2-d utility matrix, got {X.ndim} dimension(s)")
        rows = X.tolist()
    else:
        rows = [list(r) for r in X]
    if not rows or not rows[0]:
        raise ValueError("utility matrix needs at least one agent and one item")
    m = len(rows[0])
    out = []
    for i, row in enumerate(rows):
        if len(row) != m:
            raise ValueError(f"agent {i + 1} has {len(row)} utilities, expected {m}")
        frow = tuple(as_fraction(v) for v in row)
        for j, v in enumerate(frow):
            if v < 0:
                raise ValueError(f"negative utility {v} for agent {i + 1}, item a{j + 1}")
        out.append(frow)
    return tuple(out)


def check_owa_vector(alpha):
    alpha = tuple(as_fraction(a) for a in alpha)
    if not alpha:
        raise ValueError("OWA vector must have at least one entry")
    for k, a in enumerate(alpha):
        if a < 0:
            raise ValueError(f"negative OWA coefficient {a} at position {k + 1}")
    return alpha


def check_committee_size(K, m):
    if isinstance(K, (bool, np.bool_)) or not isinstance(K, numbers.Integral):
        raise TypeError(f"committee size must be an integer, got {K!r}")
    K = int(K)
    if K < 1:
        raise ValueError("committee size must be positive")
    if K > m:
        raise ValueError(f"K exceeds item count ({K} > {m})")
    return K


def check_items(items, m):
    """Return a sorted tuple of distinct 0-based item indices, validating range."""
    items = [int(a) for a in items]
    for a in items:
        if not 0 <= a < m:
            raise IndexError(f"item index {a} out of range [0, {m})")
    if len(set(items)) != len(items):
        raise ValueError(f"duplicate items in {items}")
    return tuple(sorted(items))


def check_unit_interval(name, value, *, open_low=False, open_high=False):
    value = as_fraction(value)
    low_ok = value > 0 if open_low else value >= 0
    high_ok = value < 1 if open_high else value <= 1
    if not (low_ok and high_ok):
        lo = "(" if open_low else "["
        hi = ")" if open_high else "]"
        raise ValueError(f"{name} must lie in {lo}0, 1{hi}, got {value}")
    return value
