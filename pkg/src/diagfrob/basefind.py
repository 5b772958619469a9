"""Base improvement: find bases B whose ``M(B)`` has small subdeterminants.

Swapping base elements multiplies ``|det A_B|`` by the absolute value of the
corresponding minor of ``M(B)``, so every accepted swap grows the base
determinant by more than the threshold ``C_E`` and the searches terminate
after ``O(log Delta)`` swaps.  ``C_E`` is a rational just below e; all
comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from . import linalg
from .errors import BudgetExceeded, RankDeficient
from .systems import BaseSelection, canonical_base, complement, standard_base

C_E = Fraction(2718281828459045, 10**15)
DEFAULT_MAXDET_CAP = 10**5
DEFAULT_SWEEP_K_CAP = 20
DEFAULT_LOCAL_FACTOR = Fraction(11, 10)


@dataclass(frozen=True)
class MaxDetChoice:
    columns: tuple
    value: Fraction
    guarantee: str  # 'maxdet_exact' | 'maxdet_greedy'
    ratio_bound: Fraction


def _score(M, cols, order):
    sub = linalg.submatrix(M, None, cols)
    if len(M) == order:
        return abs(linalg.det(sub))
    return max(abs(linalg.det(linalg.submatrix(sub, R))) for R in combinations(range(len(M)), order))


def _gram_det(M, cols):
    sub = linalg.submatrix(M, None, cols)
    return linalg.det(linalg.matmul(linalg.transpose(sub), sub))


def maxdet_subset(M, order, cap=DEFAULT_MAXDET_CAP,
                  local_factor=DEFAULT_LOCAL_FACTOR) -> MaxDetChoice:
    """Column set of size ``order`` maximizing the largest ``order``-minor it supports.

    Exhaustive (ratio 1) when ``C(n, order) <= cap``; otherwise greedy
    volume selection followed by single-swap local search that accepts only
    improvements by a factor above ``local_factor``.  Ties are broken
    lexicographically.
    """
    M = linalg.as_matrix(M)
    k, n = linalg.shape(M)
    if order < 1 or order > linalg.rank(M):
        raise RankDeficient(f"order {order} exceeds the rank of the matrix")
    if comb(n, order) <= cap:
        best, best_cols = Fraction(-1), None
        for cols in combinations(range(n), order):
            v = _score(M, cols, order)
            if v > best:
                best, best_cols = v, cols
        return MaxDetChoice(best_cols, Fraction(best), 'maxdet_exact', Fraction(1))
    chosen = []
    for _ in range(order):
        cand = max((j for j in range(n) if j not in chosen),
                   key=lambda j: (_gram_det(M, chosen + [j]), -j))
        chosen.append(cand)
    chosen = sorted(chosen)
    cur = _score(M, chosen, order)
    improved = True
    while improved:
        improved = False
        for pos in range(order):
            for j in range(n):
                if j in chosen:
                    continue
                trial = sorted(chosen[:pos] + chosen[pos + 1:] + [j])
                v = _score(M, trial, order)
                if v > local_factor * cur:
                    chosen, cur, improved = trial, v, True
                    break
            if improved:
                break
    if cur == 0:
        raise RankDeficient("greedy selection found no nonsingular column set")
    ratio = local_factor ** order * factorial(order)
    return MaxDetChoice(tuple(chosen), Fraction(cur), 'maxdet_greedy', ratio)


@dataclass(frozen=True)
class Swap:
    out: tuple
    into: tuple
    growth: Fraction


@dataclass(frozen=True)
class BaseSearchReport:
    base: BaseSelection
    iterations: int
    swaps: tuple
    guarantee: str
    threshold: Fraction = C_E
    initial_det: int = 0
    skipped_subsets: int = 0
    notes: tuple = field(default_factory=tuple)


def _first_base_columns(A):
    cols = linalg.independent_rows(linalg.transpose(A))
    if len(cols) < len(A):
        raise RankDeficient("matrix does not have full row rank")
    return cols


def _full_M(A, cols):
    return linalg.matmul(linalg.inverse(linalg.submatrix(A, None, cols)), A)


def poly_subdet_search(A, base=None, threshold=C_E) -> BaseSearchReport:
    """Single-element swaps until every entry of ``A_B^{-1} A`` is at most ``threshold``.

    ``A`` is k x n of rank k and the base is a set of k columns.  Entries are
    compared in absolute value.
    """
    A = linalg.as_matrix(A, integer=True)
    k, n = linalg.shape(A)
    if linalg.rank(A) < k:
        raise RankDeficient("matrix does not have full row rank")
    cols = list(base) if base is not None else list(_first_base_columns(A))
    initial = abs(linalg.det(linalg.submatrix(A, None, cols)))
    swaps = []
    iterations = 0
    while True:
        iterations += 1
        M = _full_M(A, cols)
        hit = next(((i, j) for i in range(k) for j in range(n) if abs(M[i][j]) > threshold), None)
        if hit is None:
            break
        i, j = hit
        swaps.append(Swap(out=(cols[i],), into=(j,), growth=abs(M[i][j])))
        cols[i] = j
    sel = standard_base(A, cols)
    return BaseSearchReport(base=sel, iterations=iterations, swaps=tuple(swaps),
                            guarantee='delta1_le_c', threshold=threshold, initial_det=initial)


def _subsets(indices):
    for size in range(1, len(indices) + 1):
        yield from combinations(indices, size)


def exp_subdet_search(A, base=None, k_cap=DEFAULT_SWEEP_K_CAP,
                      maxdet_cap=DEFAULT_MAXDET_CAP, threshold=C_E) -> BaseSearchReport:
    """Subset sweep over the k base positions (k x n input, column bases).

    Starts from the max-determinant base (or ``base``).  For each nonempty
    ``J`` of base positions, in increasing size and lexicographic order,
    the best ``|J|`` columns for the rows ``J`` of ``M = A_B^{-1} A`` are
    found; if that minor exceeds ``threshold`` they replace the base
    elements in ``J`` and the sweep restarts.
    """
    A = linalg.as_matrix(A, integer=True)
    k, n = linalg.shape(A)
    if k > k_cap:
        raise BudgetExceeded(f"2^{k} subsets exceed the sweep budget (k <= {k_cap})")
    if linalg.rank(A) < k:
        raise RankDeficient("matrix does not have full row rank")
    exact = True
    if base is None:
        choice = maxdet_subset(A, k, cap=maxdet_cap)
        exact = choice.guarantee == 'maxdet_exact'
        cols = list(choice.columns)
    else:
        cols = list(base)
    initial = abs(linalg.det(linalg.submatrix(A, None, cols)))
    swaps, iterations, skipped = [], 0, 0
    while True:
        iterations += 1
        M = _full_M(A, cols)
        accepted = None
        for J in _subsets(range(k)):
            rows = linalg.submatrix(M, J)
            try:
                choice = maxdet_subset(rows, len(J), cap=maxdet_cap)
            except RankDeficient:
                skipped += 1
                continue
            exact = exact and choice.guarantee == 'maxdet_exact'
            if choice.value > threshold:
                accepted = (J, choice)
                break
        if accepted is None:
            break
        J, choice = accepted
        out = tuple(cols[j] for j in J)
        keep = [c for pos, c in enumerate(cols) if pos not in J]
        cols = keep + list(choice.columns)
        swaps.append(Swap(out=out, into=choice.columns, growth=choice.value))
    sel = standard_base(A, cols)
    return BaseSearchReport(base=sel, iterations=iterations, swaps=tuple(swaps),
                            guarantee='deltai_le_exp' if exact else 'maxdet_greedy',
                            threshold=threshold, initial_det=initial, skipped_subsets=skipped)


def exp_subdet_search_dual(B, base=None, k_cap=DEFAULT_SWEEP_K_CAP,
                           maxdet_cap=DEFAULT_MAXDET_CAP, threshold=C_E) -> BaseSearchReport:
    """Subset sweep for a tall n x (n-k) matrix, over the k non-base rows.

    Bases are sets of n-k rows.  With ``M' = B_beta^{-T} B^T = (I C)`` the
    sweep enumerates the 2^k subsets ``J`` of non-base rows and picks the
    ``|J|`` base rows whose exchange multiplies the determinant the most.
    The returned base carries ``M = B_N B_beta^{-1}``.
    """
    B = linalg.as_matrix(B, integer=True)
    n, d = linalg.shape(B)
    k = n - d
    if linalg.rank(B) < d:
        raise RankDeficient("matrix does not have full column rank")
    if k > k_cap:
        raise BudgetExceeded(f"2^{k} subsets exceed the sweep budget (k <= {k_cap})")
    At = linalg.transpose(B)
    exact = True
    if base is None:
        choice = maxdet_subset(At, d, cap=maxdet_cap)
        exact = choice.guarantee == 'maxdet_exact'
        beta = list(choice.columns)
    else:
        beta = list(base)
    initial = abs(linalg.det(linalg.submatrix(B, beta)))
    swaps, iterations, skipped = [], 0, 0
    while True:
        iterations += 1
        M = _full_M(At, beta)  # d x n
        N = complement(beta, n)
        accepted = None
        for J in _subsets(N):
            if len(J) > d:
                continue
            sub_t = linalg.transpose(linalg.submatrix(M, None, J))  # |J| x d
            try:
                choice = maxdet_subset(sub_t, len(J), cap=maxdet_cap)
            except RankDeficient:
                skipped += 1
                continue
            exact = exact and choice.guarantee == 'maxdet_exact'
            if choice.value > threshold:
                accepted = (J, choice)
                break
        if accepted is None:
            break
        J, choice = accepted
        out = tuple(beta[p] for p in choice.columns)
        beta = [r for pos, r in enumerate(beta) if pos not in choice.columns] + list(J)
        swaps.append(Swap(out=out, into=tuple(J), growth=choice.value))
    sel = canonical_base(B, beta)
    return BaseSearchReport(base=sel, iterations=iterations, swaps=tuple(swaps),
                            guarantee='deltai_le_exp' if exact else 'maxdet_greedy',
                            threshold=threshold, initial_det=initial, skipped_subsets=skipped)


def canonical_maxdet_base(A, cap=DEFAULT_MAXDET_CAP) -> BaseSearchReport:
    """Max-determinant row base of a tall canonical matrix."""
    A = linalg.as_matrix(A, integer=True)
    choice = maxdet_subset(linalg.transpose(A), len(A[0]), cap=cap)
    sel = canonical_base(A, choice.columns)
    guarantee = 'maxdet_exact' if choice.guarantee == 'maxdet_exact' else 'maxdet_greedy'
    return BaseSearchReport(base=sel, iterations=1, swaps=(), guarantee=guarantee,
                            initial_det=sel.det_abs)


def canonical_poly_base(A, threshold=C_E) -> BaseSearchReport:
    """Row base of a tall matrix with ``|A A_B^{-1}|`` entrywise at most ``threshold``."""
    A = linalg.as_matrix(A, integer=True)
    rep = poly_subdet_search(linalg.transpose(A), threshold=threshold)
    sel = canonical_base(A, rep.base.indices)
    return BaseSearchReport(base=sel, iterations=rep.iterations, swaps=rep.swaps,
                            guarantee=rep.guarantee, threshold=threshold,
                            initial_det=rep.initial_det)


def swap_growth_consistent(report: BaseSearchReport) -> bool:
    """Product of recorded growth factors equals the total determinant growth."""
    total = Fraction(report.initial_det)
    for s in report.swaps:
        total *= s.growth
    return total == report.base.det_abs
