from fractions import Fraction
from itertools import combinations

import pytest

from diagfrob import basefind as B, linalg
from diagfrob.errors import BudgetExceeded

from gen import rand_full_rank, seeded


def max_minor_over_columns(M, order):
    best = 0
    for cols in combinations(range(len(M[0])), order):
        for rows in combinations(range(len(M)), order):
            best = max(best, abs(linalg.det([[M[r][c] for c in cols] for r in rows])))
    return best


def test_constant_is_below_e():
    assert Fraction(2718281828, 10**9) < B.C_E < Fraction(2718281829, 10**9)


def test_maxdet_exact_example():
    ch = B.maxdet_subset([[1, 2, 3], [4, 5, 6]], 2)
    assert ch.columns == (0, 2) and ch.value == 6
    assert ch.guarantee == 'maxdet_exact' and ch.ratio_bound == 1


def test_maxdet_greedy_is_reported_as_such():
    rng = seeded(1)
    M = rand_full_rank(rng, 2, 9, -5, 5)
    ch = B.maxdet_subset(M, 2, cap=5)
    exact = B.maxdet_subset(M, 2)
    assert ch.guarantee == 'maxdet_greedy'
    assert ch.value * ch.ratio_bound >= exact.value
    assert ch.value <= exact.value


def test_poly_search_simple_swap():
    rep = B.poly_subdet_search([[1, 10]], base=[0])
    assert rep.base.indices == (1,)
    assert rep.base.M == ((Fraction(1, 10),),)
    assert len(rep.swaps) == 1 and rep.swaps[0].growth == 10
    assert B.swap_growth_consistent(rep)


def test_poly_search_entries_bounded():
    rng = seeded(3)
    for _ in range(40):
        k = rng.randint(1, 3)
        A = rand_full_rank(rng, k, k + rng.randint(1, 4))
        rep = B.poly_subdet_search(A)
        full = linalg.matmul(linalg.inverse(linalg.submatrix(A, None, rep.base.indices)), A)
        assert all(abs(v) <= B.C_E for row in full for v in row)
        assert all(s.growth > B.C_E for s in rep.swaps)
        assert B.swap_growth_consistent(rep)


def test_exp_search_subdeterminants():
    rng = seeded(4)
    for _ in range(15):
        k = rng.randint(1, 3)
        A = rand_full_rank(rng, k, k + rng.randint(1, 3))
        rep = B.exp_subdet_search(A)
        assert rep.guarantee == 'deltai_le_exp'
        full = linalg.matmul(linalg.inverse(linalg.submatrix(A, None, rep.base.indices)), A)
        for i in range(1, k + 1):
            assert max_minor_over_columns(full, i) <= B.C_E ** i
        assert B.swap_growth_consistent(rep)


def test_exp_search_budget():
    A = [[1 if i == j else 0 for j in range(22)] for i in range(21)]
    with pytest.raises(BudgetExceeded):
        B.exp_subdet_search(A)


def test_dual_sweep_example():
    rep = B.exp_subdet_search_dual([[3], [-2]])
    assert rep.base.indices == (0,)
    assert rep.base.M == ((Fraction(-2, 3),),)


def test_canonical_poly_base_example():
    rep = B.canonical_poly_base([[1, 0], [0, 3], [0, -3], [5, 7]])
    assert rep.base.indices == (1, 3) and rep.base.det_abs == 15
    assert [s.growth for s in rep.swaps] == [5]
    assert all(abs(v) <= B.C_E for row in rep.base.M for v in row)
