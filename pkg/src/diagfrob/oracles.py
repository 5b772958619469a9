"""Brute-force reference answers for small instances.

Everything here enumerates: vertices by Cramer's rule over row subsets,
integer points over the bounding box of the vertices, representable values
of a numerical semigroup by dynamic programming.  Nothing depends on the
pipeline code, so these serve as independent checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, gcd, lcm, prod

from . import linalg, lp
from .errors import BudgetExceeded, NotNormalized, UnboundedPolytope, Unbounded
from .systems import StandardSystem

DEFAULT_POINT_LIMIT = 10**5


def _feasible(A, b, x):
    return all(bi - ax >= 0 for bi, ax in zip(b, linalg.matvec(A, x)))


def polytope_vertices(A, b):
    """Vertices of ``{x : A x <= b}`` (pointed: A must have full column rank)."""
    A = linalg.as_matrix(A, integer=True)
    n = len(A[0])
    found = set()
    for rows in combinations(range(len(A)), n):
        sub = linalg.submatrix(A, rows)
        if linalg.det(sub) == 0:
            continue
        v = linalg.solve(sub, [b[i] for i in rows])
        if _feasible(A, b, v):
            found.add(tuple(v))
    return sorted(found)


def _primitive(v):
    den = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def recession_rays(A):
    """Primitive integer generators of the extreme rays of ``{d : A d <= 0}``.

    ``A`` must have full column rank (pointed cone); the list is empty
    exactly when the polyhedron ``A x <= b`` is bounded.
    """
    A = linalg.as_matrix(A, integer=True)
    n = len(A[0])
    if linalg.rank(A) < n:
        raise UnboundedPolytope("A has a nontrivial kernel: the polyhedron contains a line")
    if n == 1:
        candidates = [(1,), (-1,)]
    else:
        candidates = []
        for rows in combinations(range(len(A)), n - 1):
            sub = linalg.submatrix(A, rows)
            if linalg.rank(sub) < n - 1:
                continue
            d = _primitive(lp._null_vector(sub, n))
            candidates += [d, tuple(-v for v in d)]
    rays = []
    for d in candidates:
        if d not in rays and all(v <= 0 for v in linalg.matvec(A, d)):
            rays.append(d)
    return sorted(rays)


def _box(vertices, rays):
    # every integer point lies in conv(V) + cone(R); subtracting integer
    # multiples of the rays moves it into conv(V) + [0,1) R
    n = len(vertices[0])
    lo = [min(v[i] for v in vertices) + sum(min(r[i], 0) for r in rays) for i in range(n)]
    hi = [max(v[i] for v in vertices) + sum(max(r[i], 0) for r in rays) for i in range(n)]
    return [ceil(v) for v in lo], [floor(v) for v in hi]


def search_box(A, b):
    """Finite box containing an integer point of ``A x <= b`` whenever one exists.

    Returns None when the polyhedron is empty.  Raises
    :class:`UnboundedPolytope` when ``A`` is not of full column rank.
    """
    A = linalg.as_matrix(A, integer=True)
    rays = recession_rays(A)
    verts = polytope_vertices(A, b)
    if not verts:
        return None
    return _box(verts, rays)


def integer_points(A, b, limit=DEFAULT_POINT_LIMIT, first=False):
    """Integer points of ``A x <= b`` inside :func:`search_box`.

    For a bounded polyhedron these are all its integer points; for an
    unbounded (pointed) one the list is nonempty iff the polyhedron has an
    integer point.
    """
    A = linalg.as_matrix(A, integer=True)
    box = search_box(A, b)
    if box is None:
        return []
    lo, hi = box
    size = prod(max(0, h - l + 1) for l, h in zip(lo, hi))
    if size > limit:
        raise BudgetExceeded(f"search box holds {size} points (limit {limit})")
    out = []
    for x in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if _feasible(A, b, x):
            out.append(x)
            if first:
                break
    return out


def find_integer_point(A, b, limit=DEFAULT_POINT_LIMIT):
    pts = integer_points(A, b, limit, first=True)
    return pts[0] if pts else None


def _standard_bounded(A):
    """True when ``{d >= 0 : A d = 0}`` is trivial."""
    k, n = linalg.shape(A)
    ext = list(A) + [tuple([1] * n)]
    rhs = [0] * k + [1]
    for cols in combinations(range(n), k + 1):
        sub = linalg.submatrix(ext, None, cols)
        if linalg.rank(sub) < k + 1:
            continue
        d = linalg.solve(sub, rhs)
        if all(v >= 0 for v in d):
            return False
    return True


def standard_integer_solutions(A, b, limit=DEFAULT_POINT_LIMIT, first=False):
    """Nonnegative integer solutions of ``A x = b`` for full-row-rank ``A``."""
    A = linalg.as_matrix(A, integer=True)
    k, n = linalg.shape(A)
    if linalg.rank(A) < k:
        raise ValueError("A must have full row rank")
    if not _standard_bounded(A):
        raise UnboundedPolytope("the kernel of A contains a nonzero nonnegative vector")
    upper = [None] * n
    any_vertex = False
    for cols in combinations(range(n), k):
        sub = linalg.submatrix(A, None, cols)
        if linalg.det(sub) == 0:
            continue
        xb = linalg.solve(sub, b)
        if min(xb, default=0) < 0:
            continue
        any_vertex = True
        for c, v in zip(cols, xb):
            f = floor(v)
            upper[c] = f if upper[c] is None else max(upper[c], f)
    if not any_vertex:
        return []
    upper = [0 if u is None else u for u in upper]
    basis = linalg.independent_rows(linalg.transpose(A))
    free = [j for j in range(n) if j not in basis]
    size = prod(upper[j] + 1 for j in free)
    if size > limit:
        raise BudgetExceeded(f"enumeration box holds {size} points (limit {limit})")
    AB = linalg.submatrix(A, None, basis)
    out = []
    for xn in product(*(range(upper[j] + 1) for j in free)):
        rhs = [bi - sum(A[i][j] * v for j, v in zip(free, xn)) for i, bi in enumerate(b)]
        xb = linalg.solve(AB, rhs)
        if any(v < 0 or Fraction(v).denominator != 1 for v in xb):
            continue
        x = [0] * n
        for j, v in zip(basis, xb):
            x[j] = int(v)
        for j, v in zip(free, xn):
            x[j] = v
        out.append(tuple(x))
        if first:
            break
    return out


def semigroup_representable(gens, limit):
    """``reach[v]`` is True when ``v = sum g_i x_i`` with ``x_i >= 0``, for ``v <= limit``."""
    reach = [False] * (limit + 1)
    reach[0] = True
    for v in range(1, limit + 1):
        reach[v] = any(g <= v and reach[v - g] for g in gens)
    return reach


def max_min_entry(A, b):
    """``max min_i x_i`` over ``A x = b, x >= 0``; None when infeasible."""
    A = linalg.as_matrix(A, integer=True)
    k, n = linalg.shape(A)
    # variables (x, t) >= 0: maximize t with t - x_i <= 0
    c = [0] * n + [1]
    A_ub = [[-1 if j == i else 0 for j in range(n)] + [1] for i in range(n)]
    b_ub = [0] * n
    A_eq = [list(row) + [0] for row in A]
    try:
        res = lp.simplex_max(c, A_ub, b_ub, A_eq, list(b))
    except lp.LPInfeasible:
        return None
    except Unbounded:
        raise UnboundedPolytope("solution set of A x = b, x >= 0 is unbounded") from None
    return res.value


@dataclass(frozen=True)
class OracleRow:
    b: tuple
    slack: object  # Fraction; None when there is no real point or no finite maximum
    feasible: bool
    point: object = None


@dataclass(frozen=True)
class OracleReport:
    """Smallest t such that every b in the box with slack >= t is integer feasible.

    ``witnesses`` are the integer-infeasible right-hand sides with the
    largest slack; each carries a real point attaining that slack.
    """

    A: tuple
    box: tuple
    empirical_threshold: int
    witnesses: tuple
    rows: tuple = field(repr=False, default=())


def _threshold(rows):
    bad = [r.slack for r in rows if not r.feasible and r.slack is not None and r.slack >= 0]
    return floor(max(bad)) + 1 if bad else 0


def _witnesses(rows, t):
    if t == 0:
        return ()
    return tuple(r for r in rows if not r.feasible and r.slack is not None and r.slack >= t - 1)


def _box_iter(box):
    return product(*(range(lo, hi + 1) for lo, hi in box))


def oracle_slackfrob_box(A, box, limit=DEFAULT_POINT_LIMIT) -> OracleReport:
    """Scan all ``b`` in ``box`` (one ``(lo, hi)`` per row) for ``A x <= b``."""
    A = linalg.as_matrix(A, integer=True)
    if len(box) != len(A):
        raise ValueError("box needs one (lo, hi) range per row")
    recession_rays(A)  # rejects polyhedra containing a line
    rows = []
    for b in _box_iter(box):
        pt = find_integer_point(A, b, limit)
        try:
            sp = lp.max_min_slack((A, b))
            slack, real = sp.min_slack, sp.x
        except Unbounded:
            slack, real = None, None  # slack unbounded: contains arbitrarily large balls
        rows.append(OracleRow(b=b, slack=slack, feasible=pt is not None,
                              point=pt if pt is not None else real))
    t = _threshold(rows)
    return OracleReport(A=A, box=tuple(box), empirical_threshold=t,
                        witnesses=_witnesses(rows, t), rows=tuple(rows))


def oracle_diagfrob_box(A, box, limit=DEFAULT_POINT_LIMIT) -> OracleReport:
    """Scan all ``b`` in ``box`` for ``A x = b, x >= 0``; slack is ``max min_i x_i``."""
    sys = StandardSystem(A, [lo for lo, _ in box])
    if not sys.normalized:
        raise NotNormalized(f"maximal minors have gcd {sys.stats.delta_gcd}")
    if len(box) != sys.k:
        raise ValueError("box needs one (lo, hi) range per row")
    rows = []
    for b in _box_iter(box):
        s = max_min_entry(sys.A, b)
        if s is None:
            rows.append(OracleRow(b=b, slack=None, feasible=False))
            continue
        sols = standard_integer_solutions(sys.A, b, limit, first=True)
        rows.append(OracleRow(b=b, slack=s, feasible=bool(sols),
                              point=sols[0] if sols else None))
    t = _threshold(rows)
    return OracleReport(A=sys.A, box=tuple(box), empirical_threshold=t,
                        witnesses=_witnesses(rows, t), rows=tuple(rows))


def verify_witness(A, row: OracleRow, form='canonical', limit=DEFAULT_POINT_LIMIT) -> bool:
    """Re-establish integer infeasibility of a witness by a fresh enumeration."""
    if form == 'canonical':
        return find_integer_point(A, row.b, limit) is None
    return not standard_integer_solutions(A, row.b, limit, first=True)
