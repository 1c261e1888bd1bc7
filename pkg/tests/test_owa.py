from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from owawinner import classify, make_owa
from owawinner.owa import (best_prefix_length, geometric_truncation_length, gprog_ratio,
                           hurwicz_lambda, parse_family, truncate_geometric)

F = Fraction


def test_family_vectors():
    assert make_owa("harmonic", 3).alpha == (1, F(1, 2), F(1, 3))
    assert make_owa("gprog", 3, 2).alpha == (4, 2, 1)
    assert make_owa("kmed", 4, 2).alpha == (0, 1, 0, 0)
    assert make_owa("kbest", 4, 2).alpha == (1, 1, 0, 0)
    assert make_owa("aprog", 3, 1, 2).alpha == (5, 3, 1)
    assert make_owa("aprog", 3, 0).alpha == (2, 1, 0)
    assert make_owa("hurwicz", 3, F(1, 4)).alpha == (F(1, 4), 0, F(3, 4))


def test_hurwicz_one_is_one_median():
    assert make_owa("hurwicz", 4, 1).alpha == make_owa("kmed", 4, 1).alpha


@pytest.mark.parametrize("family, K, params", [
    ("kmed", 3, (0,)), ("kmed", 3, (4,)), ("kbest", 2, (3,)), ("aprog", 3, (-1,)),
    ("aprog", 3, (1, 0)), ("gprog", 3, (1,)), ("hurwicz", 1, (0.5,)),
    ("hurwicz", 3, (2,)), ("nope", 3, ()), ("harmonic", 3, (1,)), ("kbest", 3, (1.5,)),
])
def test_family_domain_errors(family, K, params):
    with pytest.raises(ValueError):
        make_owa(family, K, *params)


def test_family_label_and_parse():
    v = parse_family("gprog 2", 3)
    assert v.family == "gprog 2" and v.alpha == (4, 2, 1)
    with pytest.raises(ValueError):
        parse_family("  ", 3)


def test_classify_examples():
    c = classify((2, 1, 0))
    assert (c.nonincreasing, c.constant, c.nonzero_prefix_len) == (True, False, 2)
    assert classify((1, 1, 1)).constant
    assert not classify((0, 1, 0)).nonincreasing
    assert classify((0, 1, 0)).nonzero_prefix_len == 2
    assert classify((1, 0, 2)).nonzero_prefix_len == 3


@given(st.lists(st.integers(0, 5), min_size=1, max_size=8).filter(any))
def test_classify_invariants(alpha):
    c = classify(alpha)
    assert not c.constant or c.nonincreasing
    assert 1 <= c.nonzero_prefix_len <= len(alpha)
    assert all(a == 0 for a in alpha[c.nonzero_prefix_len:])


@given(st.integers(1, 10), st.data())
def test_kbest_and_kmed_differ_only_before_k(K, data):
    k = data.draw(st.integers(1, K))
    best, med = make_owa("kbest", K, k).alpha, make_owa("kmed", K, k).alpha
    assert best[k - 1:] == med[k - 1:]
    assert classify(best).nonzero_prefix_len == classify(med).nonzero_prefix_len == k


@given(st.integers(1, 8), st.sampled_from(["kmed 1", "kbest 1", "aprog 1 2", "gprog 3",
                                           "harmonic", "hurwicz 0.3"]))
def test_families_are_valid_vectors(K, spec):
    if spec.startswith("hurwicz") and K < 2:
        return
    alpha = parse_family(spec, K).alpha
    assert len(alpha) == K and all(a >= 0 for a in alpha) and any(alpha)


def test_shape_detectors():
    assert best_prefix_length((3, 3, 0)) == 2
    assert best_prefix_length((3, 2, 0)) is None
    assert best_prefix_length((0, 0, 0)) is None
    assert hurwicz_lambda((2, 0, 6)) == F(1, 4)
    assert hurwicz_lambda((1, 1, 1)) is None
    assert gprog_ratio((12, 6, 3)) == 2
    assert gprog_ratio((4, 2, 2)) is None
    assert gprog_ratio((1,)) is None


def test_truncation_examples():
    assert geometric_truncation_length(2, F(1, 2)) == 2
    v = truncate_geometric(2, F(1, 2), 10)
    assert v.alpha == (512, 256) + (0,) * 8
    assert geometric_truncation_length(2, F(1, 100)) == 8
    # cap at K leaves the vector untruncated
    assert truncate_geometric(2, F(1, 100), 5).alpha == make_owa("gprog", 5, 2).alpha


def test_truncation_at_exact_power():
    # 2 ** 3 == 2 / 0.25 exactly; floating log would risk 3.0000000001
    assert geometric_truncation_length(2, F(1, 4)) == 3


@given(st.sampled_from([F(3, 2), F(2), F(3), F(10)]),
       st.sampled_from([F(1, 100), F(1, 10), F(1, 3), F(1, 2), F(9, 10)]),
       st.integers(1, 40))
def test_truncation_keeps_weight(p, eps, K):
    ell = geometric_truncation_length(p, eps)
    assert ell == math.ceil(math.log(float(2 / eps), float(p)) - 1e-12)
    kept, full = truncate_geometric(p, eps, K).alpha, make_owa("gprog", K, p).alpha
    assert sum(kept) / sum(full) >= 1 - eps / 2
