import csv
import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from owawinner.analysis import (BoundQuery, bound, bound_curves, borda_lambert_bound,
                                is_vacuous, iso_beta, iso_curves, iso_gamma, lambert_w,
                                parse_grid, raw_bound, segmented_bound, slots_bound,
                                suggested_gamma)

from oracles import lambert_w_reference

GRID = np.logspace(-6, 6, 241)


def test_lambert_w_fixed_points():
    assert lambert_w(0) == 0
    assert lambert_w(math.e) == pytest.approx(1, abs=1e-15)
    assert lambert_w(1) == pytest.approx(0.5671432904, abs=1e-9)
    assert lambert_w(math.inf) == math.inf


@pytest.mark.parametrize("x", GRID)
def test_lambert_w_residual(x):
    w = lambert_w(x)
    assert abs(w * math.exp(w) - x) <= 1e-12 * x


def test_lambert_w_against_scipy():
    ours = np.array([lambert_w(x) for x in GRID])
    ref = np.array([lambert_w_reference(x) for x in GRID])
    np.testing.assert_allclose(ours, ref, rtol=1e-13)


def test_lambert_w_rejects_negative():
    with pytest.raises(ValueError):
        lambert_w(-0.1)
    with pytest.raises(ValueError):
        lambert_w(float("nan"))


def test_hand_derived_bounds():
    assert slots_bound(0.8, 0.5, 3, 2) == pytest.approx(0.4221067578, abs=1e-10)
    assert bound(BoundQuery("borda-lambert", K=math.e, ell=1)) == pytest.approx(1 - 2 / math.e, abs=1e-12)
    assert bound(BoundQuery("greedy-general")) == pytest.approx(0.6321205588, abs=1e-10)
    assert bound(BoundQuery("kbest-proxy", alpha=(2, 1, 0))) == 0.5
    assert segmented_bound(1, 1, 40, 2) == pytest.approx(1 - 2 * math.exp(-10))


def test_clamping_and_vacuous():
    q = BoundQuery("segmented", beta=1, gamma=0.1, K=2, ell=2)
    assert raw_bound(q) < 0 and bound(q) == 0 and is_vacuous(q)
    assert borda_lambert_bound(1) == 0
    assert not is_vacuous(BoundQuery("slots", beta=0.5, gamma=0.5, K=4, ell=1))


@pytest.mark.parametrize("kwargs", [
    dict(family="nope"), dict(family="slots", beta=1.5), dict(family="slots", gamma=-0.1),
    dict(family="slots", K=1, ell=2), dict(family="segmented", ell=0.5), dict(family="kbest-proxy"),
])
def test_bound_query_validation(kwargs):
    with pytest.raises(ValueError):
        BoundQuery(**kwargs)


def test_suggested_gamma():
    assert suggested_gamma(math.e, 1) == pytest.approx(1 / math.e)
    assert suggested_gamma(3, 3) == pytest.approx(0.5671432904)
    values = [suggested_gamma(r, 1) for r in (1, 10, 100)]
    assert values[0] > values[1] > values[2]
    with pytest.raises(ValueError):
        suggested_gamma(1, 2)


@given(st.floats(1, 1e4))
def test_borda_bound_chain(r):
    w = lambert_w(r)
    beta = 1 - w / r
    via_slots = beta * (1 - math.exp(-w))
    assert via_slots == pytest.approx(beta**2, rel=1e-9, abs=1e-12)
    assert via_slots >= 1 - 2 * w / r - 1e-12


@given(st.sampled_from(["slots", "segmented", "borda-lambert", "greedy-general"]),
       st.floats(0, 1), st.floats(0, 1), st.integers(1, 50), st.integers(1, 5))
def test_bounds_in_unit_interval(family, beta, gamma, K, ell):
    if K < ell:
        K, ell = ell, K
    v = bound(BoundQuery(family, beta, gamma, K, ell))
    assert 0 <= v <= 1


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bound_curves_layout_and_monotonicity():
    grid = parse_grid("beta=0.5:1:6; gamma=0.1:1:10; ratio=1:20:20")
    text = bound_curves("slots", grid["beta"], grid["gamma"], grid["ratio"])
    rows = _rows(text)
    assert text.splitlines()[0] == "beta,gamma,k_over_ell,bound"
    assert len(rows) == 6 * 10 * 20
    betas, gammas, ratios = (sorted({r[c] for r in rows}, key=float)
                             for c in ("beta", "gamma", "k_over_ell"))
    table = {(r["beta"], r["gamma"], r["k_over_ell"]): float(r["bound"]) for r in rows}
    for i, b in enumerate(betas):
        for j, g in enumerate(gammas):
            for k, r in enumerate(ratios):
                v = table[b, g, r]
                if i + 1 < len(betas):
                    assert table[betas[i + 1], g, r] >= v
                if j + 1 < len(gammas):
                    assert table[b, gammas[j + 1], r] >= v
                if k + 1 < len(ratios):
                    assert table[b, g, ratios[k + 1]] >= v


def test_bound_curves_empty_grid():
    assert bound_curves("slots", [], [0.5], [1]) == "beta,gamma,k_over_ell,bound\n"
    assert parse_grid("beta=")["beta"].size == 0


def test_bound_curves_deterministic_order():
    text = bound_curves("segmented", [0.5, 1], [0.5], [4, 8], ell=2)
    assert [tuple(r.values())[:3] for r in _rows(text)] == [
        ("0.5", "0.5", "4"), ("0.5", "0.5", "8"), ("1", "0.5", "4"), ("1", "0.5", "8")]


def test_iso_beta_decreases_in_gamma():
    gammas = np.linspace(0.05, 1, 20)
    betas = [iso_beta(0.4, g, 3) for g in gammas]
    assert all(a > b for a, b in zip(betas, betas[1:]))
    assert slots_bound(min(betas[-1], 1), 1, 3, 1) == pytest.approx(0.4)


def test_iso_gamma_roundtrip():
    g = iso_gamma(0.5, 0.9, 4)
    assert slots_bound(0.9, g, 4, 1) == pytest.approx(0.5)
    assert iso_gamma(0.95, 0.9, 4) == math.inf
    assert iso_beta(0.5, 0, 4) == math.inf


def test_iso_curves_beta_one_slice():
    text = iso_curves([0.5, 0.7], gammas=[], ratios=np.linspace(1, 10, 10), betas=[1.0])
    rows = _rows(text)
    for t in ("0.5", "0.7"):
        gs = [float(r["gamma"]) for r in rows if r["target"] == t]
        assert gs == sorted(gs, reverse=True) and gs
    solved = _rows(iso_curves([0.3], gammas=[0.2, 0.6, 1.0], ratios=[2, 5]))
    for r in solved:
        assert slots_bound(float(r["beta"]), float(r["gamma"]), float(r["k_over_ell"]), 1) == \
            pytest.approx(0.3, rel=1e-8)


def test_parse_grid_forms():
    g = parse_grid("beta=0.5:1:3 gamma=0.1,0.2")
    np.testing.assert_allclose(g["beta"], [0.5, 0.75, 1])
    np.testing.assert_allclose(g["gamma"], [0.1, 0.2])
    with pytest.raises(ValueError):
        parse_grid("=1")
