from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from owawinner import (Instance, OwaVector, UtilityMatrix, WinnerSet, approval_profile,
                       borda_profile, nonfinicky_beta)
from owawinner.model import NonFinickyParams, SolveReport, format_number

from conftest import EXAMPLE1_ROWS, EXJL_ROWS
from oracles import beta_for


def test_utility_matrix_basic():
    u = UtilityMatrix([[1, 2], [3, 0]])
    assert (u.n, u.m, u.u_max) == (2, 2, 3)
    assert u.column_sums() == (4, 2)
    assert isinstance(u[0, 1], Fraction)


def test_utility_matrix_rejects_negative_and_ragged():
    with pytest.raises(ValueError, match="negative"):
        UtilityMatrix([[1, -1]])
    with pytest.raises(ValueError):
        UtilityMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        UtilityMatrix([])


def test_float_utilities_become_exact():
    u = UtilityMatrix([[0.1, 0.25]])
    assert u.u[0] == (Fraction(1, 10), Fraction(1, 4))


def test_instance_invariants():
    u = UtilityMatrix([[1, 2, 3]])
    with pytest.raises(ValueError, match="K exceeds item count"):
        Instance(u, OwaVector((1, 1, 1, 1)))
    with pytest.raises(ValueError):
        Instance(u, OwaVector((0, 0)))
    with pytest.raises(ValueError):
        OwaVector((1, -1))
    inst = Instance(u, OwaVector((1, 0)))
    assert (inst.n, inst.m, inst.K) == (1, 3, 2)


def test_single_zero_utility_is_valid():
    inst = Instance.from_arrays([[0]], [1])
    assert inst.K == 1 and inst.utilities.u_max == 0


def test_winner_set_checks_score(example1):
    w = WinnerSet.of(example1, [5, 0, 1])
    assert w.items == (0, 1, 5) and w.score == 77
    assert str(w) == "a1 a2 a6 / 77"
    with pytest.raises(ValueError, match="does not match"):
        WinnerSet.of(example1, [0, 1, 5], score=76)
    with pytest.raises(ValueError):
        WinnerSet.of(example1, [0, 1])
    with pytest.raises(ValueError):
        WinnerSet.of(example1, [0, 0, 1])
    with pytest.raises(IndexError):
        WinnerSet.of(example1, [0, 1, 6])


def test_approval_profile():
    assert approval_profile([{0, 1}], 3).u == ((1, 1, 0),)
    assert approval_profile([set()], 3).u == ((0, 0, 0),)
    with pytest.raises(IndexError):
        approval_profile([{3}], 3)
    everything = approval_profile([range(4)] * 3, 4)
    assert nonfinicky_beta(everything, 1) == 1


def test_borda_profile_reproduces_example1():
    orders = [
        [0, 1, 2, 4, 5, 3],
        [5, 0, 3, 2, 4, 1],
        [4, 3, 1, 2, 5, 0],
    ]
    u = borda_profile(orders)
    assert u.u == tuple(tuple(Fraction(v) for v in r) for r in
                        (EXAMPLE1_ROWS[0], EXAMPLE1_ROWS[3], EXAMPLE1_ROWS[5]))


def test_borda_profile_edges():
    assert borda_profile([[0]]).u == ((0,),)
    assert borda_profile([[0, 1, 2, 3]]).u == ((3, 2, 1, 0),)
    with pytest.raises(ValueError):
        borda_profile([[0, 0, 1]])


@given(st.lists(st.permutations(range(6)), min_size=1, max_size=5))
def test_borda_rows_are_permutations(rankings):
    u = borda_profile(rankings)
    for row in u.u:
        assert sorted(row) == list(range(6))


@pytest.mark.parametrize("gamma, beta", [
    (Fraction(1, 2), Fraction(4, 5)),
    (Fraction(2, 3), Fraction(3, 5)),
    (Fraction(5, 6), Fraction(1, 2)),
])
def test_nonfinicky_beta_exjl(gamma, beta):
    assert nonfinicky_beta(UtilityMatrix(EXJL_ROWS), gamma) == beta


def test_nonfinicky_beta_errors():
    with pytest.raises(ValueError, match="no positive utility"):
        nonfinicky_beta(UtilityMatrix([[0, 0]]), 0.5)
    with pytest.raises(ValueError):
        nonfinicky_beta(UtilityMatrix([[1, 0]]), 0)
    with pytest.raises(ValueError):
        nonfinicky_beta(UtilityMatrix([[1, 0]]), 1.5)


def test_nonfinicky_beta_uses_ceiling():
    # gamma*m = 1.5 demands two good items per agent
    u = UtilityMatrix([[10, 5, 0]])
    assert nonfinicky_beta(u, Fraction(1, 2)) == Fraction(1, 2)


@given(st.lists(st.permutations(range(8)), min_size=1, max_size=5),
       st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]))
def test_borda_is_x_one_minus_x_nonfinicky(rankings, x):
    assert nonfinicky_beta(borda_profile(rankings), 1 - x) >= x


@given(st.lists(st.lists(st.integers(0, 9), min_size=5, max_size=5), min_size=1, max_size=4)
       .filter(lambda rows: any(any(r) for r in rows)),
       st.integers(1, 5))
def test_nonfinicky_beta_matches_oracle(rows, t):
    gamma = Fraction(t, 5)
    assert nonfinicky_beta(UtilityMatrix(rows), gamma) == beta_for(rows, gamma)


@given(st.lists(st.lists(st.integers(0, 9), min_size=6, max_size=6), min_size=1, max_size=4)
       .filter(lambda rows: any(any(r) for r in rows)))
def test_nonfinicky_beta_nonincreasing_in_gamma(rows):
    u = UtilityMatrix(rows)
    betas = [nonfinicky_beta(u, Fraction(t, 6)) for t in range(1, 7)]
    assert all(a >= b for a, b in zip(betas, betas[1:]))


@given(st.integers(2, 8), st.integers(1, 4), st.data())
def test_generous_approval_has_beta_one(m, n, data):
    gamma = Fraction(data.draw(st.integers(1, m)), m)
    need = -(-gamma * m // 1)
    approvals = [data.draw(st.sets(st.integers(0, m - 1), min_size=int(need))) for _ in range(n)]
    assert nonfinicky_beta(approval_profile(approvals, m), gamma) == 1


def test_nonfinicky_params_validation():
    with pytest.raises(ValueError):
        NonFinickyParams(Fraction(3, 2), Fraction(1, 2))
    p = NonFinickyParams(0.5, 0.25)
    assert p.beta == Fraction(1, 2)


@pytest.mark.parametrize("x, text", [
    (Fraction(77), "77"), (Fraction(1, 4), "0.25"), (Fraction(-3, 8), "-0.375"),
    (Fraction(1, 3), "1/3"), (Fraction(7, 2), "3.5"),
])
def test_format_number(x, text):
    assert format_number(x) == text


def test_solve_report_properties(example1):
    w = WinnerSet.of(example1, [0, 1, 5])
    r = SolveReport("x", w, 1.0)
    assert r.items == (0, 1, 5) and r.score == 77
