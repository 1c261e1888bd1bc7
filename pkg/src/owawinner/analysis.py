"""Closed-form approximation bounds, Lambert W, and bound-curve CSV output.

Bounds are advisory and evaluated in double precision.
"""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

FAMILIES = ("slots", "segmented", "borda-lambert", "kbest-proxy", "greedy-general")

_MAX_ITER = 100


def lambert_w(x):
    """Principal branch of Lambert W for ``x >= 0``: the w with ``w * exp(w) = x``.

    For ``x <= e`` Halley's method is started at ``log1p(x)``; above e the
    equivalent equation ``w + log(w) = log(x)`` is solved by Newton's method
    from ``log(x) - log(log(x))``, which avoids overflow of ``exp(w)``.
    """
    x = float(x)
    if math.isnan(x) or x < 0:
        raise ValueError(f"lambert_w is defined here for x >= 0 only, got {x}")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x <= math.e:
        w = math.log1p(x)
        for _ in range(_MAX_ITER):
            ew = math.exp(w)
            f = w * ew - x
            denom = ew * (w + 1) - (w + 2) * f / (2 * w + 2)
            step = f / denom
            w -= step
            if abs(step) <= 1e-16 * (1 + abs(w)):
                break
        return w
    lx = math.log(x)
    w = lx - math.log(lx) if lx > 1 else 1.0
    for _ in range(_MAX_ITER):
        step = (w + math.log(w) - lx) / (1 + 1 / w)
        w -= step
        if abs(step) <= 1e-16 * (1 + abs(w)):
            break
    return w


def slots_bound(beta, gamma, K, ell):
    """beta * (1 - exp(-gamma K / ell)), clamped to [0, 1]."""
    return _clamp(beta * (1 - math.exp(-gamma * K / ell)))


def segmented_bound(beta, gamma, K, ell):
    """beta * (1 - ell * exp(-gamma K / ell^2)), clamped to [0, 1]."""
    return _clamp(beta * (1 - ell * math.exp(-gamma * K / ell**2)))


def borda_lambert_bound(k_over_ell):
    """1 - 2 W(K/ell) / (K/ell) for Borda utilities with the suggested gamma."""
    r = float(k_over_ell)
    return _clamp(1 - 2 * lambert_w(r) / r)


def suggested_gamma(K, ell, m=None):
    """gamma = W(K/ell) * ell / K, the top-x share (x = gamma m) for Borda utilities."""
    if not K >= ell >= 1:
        raise ValueError(f"need K >= ell >= 1, got K={K}, ell={ell}")
    r = K / ell
    return lambert_w(r) / r


def _clamp(v):
    return min(1.0, max(0.0, v))


@dataclass(frozen=True)
class BoundQuery:
    family: str
    beta: float = 1.0
    gamma: float = 1.0
    K: float = 1
    ell: float = 1
    alpha: tuple = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown bound family {self.family!r}")
        if not (0 <= self.beta <= 1 and 0 <= self.gamma <= 1):
            raise ValueError("beta and gamma must lie in [0, 1]")
        if self.family in ("slots", "segmented") and not (self.ell >= 1 and self.K >= self.ell):
            raise ValueError("slots/segmented bounds need ell >= 1 and K >= ell")
        if self.family == "kbest-proxy" and not self.alpha:
            raise ValueError("kbest-proxy bound needs the OWA vector")


def raw_bound(q):
    """Formula value before clamping (may be negative for small K)."""
    if q.family == "slots":
        return q.beta * (1 - math.exp(-q.gamma * q.K / q.ell))
    if q.family == "segmented":
        return q.beta * (1 - q.ell * math.exp(-q.gamma * q.K / q.ell**2))
    if q.family == "borda-lambert":
        r = q.K / q.ell
        return 1 - 2 * lambert_w(r) / r
    if q.family == "kbest-proxy":
        alpha = [float(a) for a in q.alpha]
        return sum(alpha) / (len(alpha) * alpha[0])
    return 1 - 1 / math.e


def bound(q):
    """Approximation ratio for ``q``, clamped to [0, 1]."""
    return _clamp(raw_bound(q))


def is_vacuous(q):
    """True when the formula is nonpositive, i.e. it guarantees nothing."""
    return raw_bound(q) <= 0


def parse_grid(spec):
    """Parse ``"beta=0.5:1:6; gamma=0.1,0.5; ratio=1:10:10"`` into float arrays.

    ``start:stop:num`` is an inclusive linspace; a comma list is taken as is;
    an empty value gives an empty axis.
    """
    axes = {}
    for part in spec.replace(";", " ").split():
        name, _, values = part.partition("=")
        name = name.strip()
        if not name:
            raise ValueError(f"bad grid component {part!r}")
        values = values.strip()
        if not values:
            axes[name] = np.array([])
        elif ":" in values:
            start, stop, num = values.split(":")
            axes[name] = np.linspace(float(start), float(stop), int(num))
        else:
            axes[name] = np.array([float(v) for v in values.split(",")])
    return axes


def _fmt(v):
    return f"{v:.10g}"


def bound_curves(family, betas, gammas, ratios, ell=1):
    """CSV with one ``beta,gamma,k_over_ell,bound`` row per grid point.

    Rows are ordered by beta, then gamma, then K/ell.  ``ell`` only matters
    for the segmented family.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["beta", "gamma", "k_over_ell", "bound"])
    for b in betas:
        for g in gammas:
            for r in ratios:
                q = BoundQuery(family, float(b), float(g), float(r) * ell, ell)
                writer.writerow([_fmt(b), _fmt(g), _fmt(r), _fmt(bound(q))])
    return out.getvalue()


def iso_beta(target, gamma, k_over_ell):
    """beta with beta * (1 - exp(-gamma K/ell)) = target (may exceed 1)."""
    denom = 1 - math.exp(-gamma * k_over_ell)
    return math.inf if denom <= 0 else target / denom


def iso_gamma(target, beta, k_over_ell):
    """gamma with beta * (1 - exp(-gamma K/ell)) = target, or inf if unreachable."""
    if target >= beta:
        return math.inf
    return -math.log(1 - target / beta) / k_over_ell


def iso_curves(targets, gammas=(), ratios=(), betas=()):
    """Iso-bound curves of the slots bound as CSV ``target,beta,gamma,k_over_ell``.

    For each target: with ``betas`` empty, one (gamma, K/ell) grid solved for
    beta; otherwise one (beta, K/ell) grid solved for gamma.  Points outside
    [0, 1] are dropped.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["target", "beta", "gamma", "k_over_ell"])
    for t in targets:
        if len(betas) == 0:
            for r in ratios:
                for g in gammas:
                    b = iso_beta(t, g, r)
                    if 0 <= b <= 1:
                        writer.writerow([_fmt(t), _fmt(b), _fmt(g), _fmt(r)])
        else:
            for b in betas:
                for r in ratios:
                    g = iso_gamma(t, b, r)
                    if 0 <= g <= 1:
                        writer.writerow([_fmt(t), _fmt(b), _fmt(g), _fmt(r)])
    return out.getvalue()
