"""Exact rational linear programming (two-phase tableau simplex, Bland's rule).

Only the pieces the feasibility pipelines need are exposed: the point of
maximal uniform slack of ``A x <= b``, a point with at least a requested
slack, and a vertex base reachable from a feasible point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DiagFrobError, NoBase, Unbounded


class LPInfeasible(DiagFrobError):
    pass


@dataclass(frozen=True)
class LPResult:
    x: tuple
    value: Fraction


def _pivot(T, obj, basis, r, col):
    piv = T[r][col]
    T[r] = [v / piv for v in T[r]]
    pr = T[r]
    for i, row in enumerate(T):
        if i != r and row[col]:
            f = row[col]
            T[i] = [a - f * b for a, b in zip(row, pr)]
    if obj[col]:
        f = obj[col]
        obj[:] = [a - f * b for a, b in zip(obj, pr)]
    basis[r] = col


def _run(T, obj, basis, allowed):
    """Bland's rule iterations; returns None at optimum or the unbounded column."""
    while True:
        enter = next((j for j in allowed if obj[j] > 0), None)
        if enter is None:
            return None
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return enter
        _pivot(T, obj, basis, best[1], enter)


def simplex_max(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    """Maximize ``c u`` subject to ``A_ub u <= b_ub``, ``A_eq u = b_eq``, ``u >= 0``.

    Raises :class:`LPInfeasible`, or :class:`Unbounded` with a ray ``r >= 0``
    along which the objective grows (``A_ub r <= 0``, ``A_eq r = 0``).
    """
    nv = len(c)
    n_ub, n_eq = len(A_ub), len(A_eq)
    m = n_ub + n_eq
    ncols = nv + n_ub + m  # structural, slack, artificial
    art0 = nv + n_ub
    T = []
    for i in range(m):
        if i < n_ub:
            coeffs, rhs = A_ub[i], b_ub[i]
        else:
            coeffs, rhs = A_eq[i - n_ub], b_eq[i - n_ub]
        row = [Fraction(v) for v in coeffs] + [Fraction(0)] * (n_ub + m) + [Fraction(rhs)]
        if i < n_ub:
            row[nv + i] = Fraction(1)
        if row[-1] < 0:
            row = [-v for v in row]
        row[art0 + i] = Fraction(1)
        T.append(row)
    basis = [art0 + i for i in range(m)]

    # phase 1: maximize -sum(artificials)
    obj = [Fraction(0)] * (ncols + 1)
    for row in T:
        for j in range(art0):
            obj[j] += row[j]
        obj[-1] += row[-1]
    _run(T, obj, basis, range(art0))
    if obj[-1] != 0:
        raise LPInfeasible("linear program is infeasible")
    r = 0
    while r < len(T):
        if basis[r] >= art0:
            col = next((j for j in range(art0) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, obj, basis, r, col)
        r += 1

    # phase 2
    cost = [Fraction(v) for v in c] + [Fraction(0)] * (ncols - nv)
    obj = cost[:] + [Fraction(0)]
    for i, row in enumerate(T):
        cb = cost[basis[i]]
        if cb:
            obj = [a - cb * b for a, b in zip(obj, row)]
    enter = _run(T, obj, basis, range(art0))
    u = [Fraction(0)] * art0
    for i, bcol in enumerate(basis):
        u[bcol] = T[i][-1]
    if enter is not None:
        ray = [Fraction(0)] * art0
        ray[enter] = Fraction(1)
        for i, bcol in enumerate(basis):
            if bcol < art0:
                ray[bcol] = -T[i][enter]
        raise Unbounded("objective is unbounded", ray=tuple(ray[:nv]), point=tuple(u[:nv]))
    value = sum(ci * ui for ci, ui in zip(cost, u))
    return LPResult(x=tuple(u[:nv]), value=value)


def _unpack(sys):
    if isinstance(sys, tuple) and len(sys) == 2:
        return linalg.as_matrix(sys[0]), tuple(sys[1])
    return sys.A, sys.b


@dataclass(frozen=True)
class SlackPoint:
    x: tuple
    min_slack: Fraction
    tight_rows: tuple


def slack_point(A, b, x) -> SlackPoint:
    slacks = [Fraction(bi) - ax for bi, ax in zip(b, linalg.matvec(A, x))]
    s = min(slacks)
    return SlackPoint(x=tuple(Fraction(v) for v in x), min_slack=s,
                      tight_rows=tuple(i for i, v in enumerate(slacks) if v == s))


def max_min_slack(sys) -> SlackPoint:
    """Point maximizing ``min_i (b_i - A_i x)``.

    Solved as: maximize s subject to ``A x + s 1 <= b``.  The substitution
    ``s = min(b) + s'`` with ``s' >= 0`` loses nothing since ``x = 0``
    already reaches ``min(b)``.  Raises :class:`Unbounded` when the maximum
    is infinite; the exception's ``ray`` then satisfies ``A d <= -1``.
    """
    A, b = _unpack(sys)
    m, n = linalg.shape(A)
    base = min(b)
    A_ub = [list(row) + [-v for v in row] + [1] for row in A]
    b_ub = [bi - base for bi in b]
    c = [0] * (2 * n) + [1]
    try:
        res = simplex_max(c, A_ub, b_ub)
    except Unbounded as exc:
        r = exc.ray
        ds = r[-1]
        d = tuple((r[j] - r[n + j]) / ds for j in range(n))
        p = exc.point
        x = tuple(p[j] - p[n + j] for j in range(n))
        raise Unbounded("uniform slack is unbounded above", ray=d,
                        point=slack_point(A, b, x)) from None
    x = tuple(res.x[j] - res.x[n + j] for j in range(n))
    return slack_point(A, b, x)


def point_with_slack(sys, t) -> SlackPoint:
    """A point whose uniform slack is at least ``t`` if one exists, else the best one.

    When the maximum is unbounded the returned point walks the certificate
    ray just far enough.
    """
    A, b = _unpack(sys)
    try:
        return max_min_slack((A, b))
    except Unbounded as exc:
        start = exc.point
        lam = max(Fraction(0), Fraction(t) - start.min_slack)
        x = tuple(xi + lam * di for xi, di in zip(start.x, exc.ray))
        return slack_point(A, b, x)


def _null_vector(rows, n):
    """A nonzero rational vector orthogonal to ``rows`` (first free column set to 1)."""
    a = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = next((c for c in range(n) if c not in pivots), None)
    if free is None:
        return None
    d = [Fraction(0)] * n
    d[free] = Fraction(1)
    for i, c in enumerate(pivots):
        d[c] = -a[i][free]
    return d


def feasible_base(sys, x) -> tuple:
    """Rows of a vertex of ``{A x <= b}`` reached from the feasible point ``x``.

    The point is pushed along null-space directions of its tight rows until
    n independent rows are tight; directions are taken in lexicographic order
    and walked positively whenever that is bounded.  Returns the sorted row
    indices of the lexicographically first independent tight set.
    """
    A, b = _unpack(sys)
    m, n = linalg.shape(A)
    if linalg.rank(A) < n:
        raise NoBase(f"rank(A) < {n}: the polyhedron has no vertex")
    x = [Fraction(v) for v in x]
    slacks = [Fraction(bi) - ax for bi, ax in zip(b, linalg.matvec(A, x))]
    if min(slacks) < 0:
        raise ValueError("starting point violates A x <= b")
    while True:
        tight = [i for i in range(m) if slacks[i] == 0]
        chosen = linalg.independent_rows([A[i] for i in tight])
        base = tuple(tight[i] for i in chosen)
        if len(base) == n:
            return tuple(sorted(base))
        d = _null_vector([A[i] for i in base], n)
        Ad = linalg.matvec(A, d)
        if not any(v > 0 for v in Ad):
            d = [-v for v in d]
            Ad = [-v for v in Ad]
        step = min(slacks[i] / Ad[i] for i in range(m) if Ad[i] > 0)
        x = [xi + step * di for xi, di in zip(x, d)]
        slacks = [s - step * v for s, v in zip(slacks, Ad)]
