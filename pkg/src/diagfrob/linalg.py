"""Exact dense linear algebra over the integers and the rationals.

Matrices are tuples of row tuples holding ``int`` or ``fractions.Fraction``
entries.  Every routine is exact; nothing here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Optional, Sequence

from .errors import NotPrimitive, ParseError, RankDeficient, Singular, TooLarge

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]

DEFAULT_MINOR_CAP = 10**6


# ---------------------------------------------------------------------------
# construction helpers


def as_matrix(M, *, integer=False) -> Matrix:
    """Freeze ``M`` into a tuple of equal-length row tuples."""
    rows = tuple(tuple(row) for row in M)
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise ValueError("ragged matrix")
        if integer:
            for v in row:
                if not isinstance(v, int) and not (
                    isinstance(v, Fraction) and v.denominator == 1
                ):
                    raise TypeError(f"non-integer entry {v!r}")
    if integer:
        rows = tuple(tuple(int(v) for v in row) for row in rows)
    return rows


def shape(M):
    return len(M), len(M[0])


def identity(n) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(M) -> Matrix:
    return tuple(zip(*M))


def matmul(A, B) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(A, x) -> tuple:
    return tuple(sum(a * v for a, v in zip(row, x)) for row in A)


def submatrix(M, rows=None, cols=None) -> Matrix:
    if rows is None:
        rows = range(len(M))
    if cols is None:
        cols = range(len(M[0]))
    cols = list(cols)
    return tuple(tuple(M[i][j] for j in cols) for i in rows)


def stack(*blocks) -> Matrix:
    return tuple(row for block in blocks for row in block)


def is_integral(values) -> bool:
    return all(isinstance(v, int) or v.denominator == 1 for v in values)


def to_int_vector(values) -> tuple:
    if not is_integral(values):
        raise ValueError("vector is not integral")
    return tuple(int(v) for v in values)


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# determinants, rank, inverses


def _all_int(M):
    return all(isinstance(v, int) for row in M for v in row)


def det(M):
    """Exact determinant of a square matrix.

    Integer input goes through Bareiss fraction-free elimination, so every
    intermediate value is itself a minor of ``M``.
    """
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("det requires a square matrix")
    if not _all_int(M):
        return _det_rational(M)
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def _det_rational(M):
    a = [[Fraction(v) for v in row] for row in M]
    n = len(a)
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        pivot = a[k][k]
        result *= pivot
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return result


def rank(M) -> int:
    a = [[Fraction(v) for v in row] for row in M]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, rows):
            f = a[i][c] / a[r][c]
            if f:
                for j in range(c, cols):
                    a[i][j] -= f * a[r][j]
        r += 1
        if r == rows:
            break
    return r


def independent_rows(M) -> tuple:
    """Lexicographically first maximal set of linearly independent rows."""
    basis = []  # reduced rows with their pivot columns
    chosen = []
    for idx, row in enumerate(M):
        v = [Fraction(x) for x in row]
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is not None:
            basis.append((piv, v))
            chosen.append(idx)
    return tuple(chosen)


def inverse(M) -> Matrix:
    """Exact rational inverse by Gauss-Jordan elimination."""
    n = len(M)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise Singular("matrix is singular")
        a[c], a[p] = a[p], a[c]
        pivot = a[c][c]
        a[c] = [v / pivot for v in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def solve(M, b) -> tuple:
    """Exact solution of the square system ``M x = b``."""
    return matvec(inverse(M), b)


# ---------------------------------------------------------------------------
# Hermite normal form


@dataclass(frozen=True)
class HermiteForm:
    """Column-style Hermite form ``original = H Q``.

    ``H`` has the shape of ``original`` (k x n) and is zero beyond column k;
    its leading k x k block is lower triangular with ``0 <= H[i][j] <
    H[i][i]`` for ``j < i``.  ``transform`` is ``Q^{-1}``, so that
    ``original * transform == H``.
    """

    H: Matrix
    Q: Matrix
    transform: Matrix
    original: Matrix

    @property
    def diagonal(self):
        return tuple(self.H[i][i] for i in range(len(self.H)))


def hnf(M) -> HermiteForm:
    M = as_matrix(M, integer=True)
    k, n = shape(M)
    if k > n:
        raise RankDeficient(f"{k} rows cannot be independent in dimension {n}")
    a = [list(row) for row in M]
    U = [list(row) for row in identity(n)]
    Q = [list(row) for row in identity(n)]

    def col_combine(i, j, x, y, u, v):
        # col_i, col_j <- x col_i + y col_j, u col_i + v col_j
        for mat in (a, U):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i] = x * ci + y * cj
                row[j] = u * ci + v * cj

    for i in range(k):
        for j in range(i + 1, n):
            if a[i][j] == 0:
                continue
            p, q = a[i][i], a[i][j]
            g, x, y = xgcd(p, q)
            pg, qg = p // g, q // g
            col_combine(i, j, x, y, -qg, pg)
            Q[i], Q[j] = (
                [pg * s + qg * t for s, t in zip(Q[i], Q[j])],
                [-y * s + x * t for s, t in zip(Q[i], Q[j])],
            )
        if a[i][i] == 0:
            raise RankDeficient(f"row {i} is dependent on the previous rows")
        if a[i][i] < 0:
            for mat in (a, U):
                for row in mat:
                    row[i] = -row[i]
            Q[i] = [-v for v in Q[i]]
        d = a[i][i]
        for j in range(i):
            q = a[i][j] // d
            if q:
                for mat in (a, U):
                    for row in mat:
                        row[j] -= q * row[i]
                Q[i] = [s + q * t for s, t in zip(Q[i], Q[j])]
    return HermiteForm(H=as_matrix(a), Q=as_matrix(Q), transform=as_matrix(U), original=M)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``S == P original Q`` with ``S`` diagonal and ``s_i | s_{i+1}``."""

    S: Matrix
    P: Matrix
    Q: Matrix
    original: Matrix

    @property
    def diagonal(self):
        return tuple(self.S[i][i] for i in range(min(shape(self.S))))

    @property
    def invariant_factors(self):
        return tuple(s for s in self.diagonal if s)


def snf(M) -> SmithForm:
    M = as_matrix(M, integer=True)
    k, n = shape(M)
    a = [list(row) for row in M]
    P = [list(row) for row in identity(k)]
    Q = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for mat in (a, Q):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        P[dst] = [x + f * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, f):
        for mat in (a, Q):
            for row in mat:
                row[dst] += f * row[src]

    for t in range(min(k, n)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, k):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, 'r') for i in range(t + 1, k) if a[i][t]]
            rest += [(abs(a[t][j]), j, 'c') for j in range(t + 1, n) if a[t][j]]
            if rest:
                _, idx, kind = min(rest)
                if kind == 'r':
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            bad = next(((i, j) for i in range(t + 1, k) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            P[t] = [-v for v in P[t]]
    return SmithForm(S=as_matrix(a), P=as_matrix(P), Q=as_matrix(Q), original=M)


# ---------------------------------------------------------------------------
# minors and subdeterminant statistics


def count_minors(rows, cols, order) -> int:
    return comb(rows, order) * comb(cols, order)


def iter_minor_tables(M, max_order):
    """Yield ``(order, table)`` where ``table`` maps (rows, cols) to the minor.

    Order ``j`` minors are obtained from order ``j-1`` ones by expansion
    along the first selected row.
    """
    k, n = shape(M)
    table = {((i,), (j,)): M[i][j] for i in range(k) for j in range(n)}
    yield 1, table
    for order in range(2, max_order + 1):
        new = {}
        for R in combinations(range(k), order):
            r0, tail = R[0], R[1:]
            row = M[r0]
            for C in combinations(range(n), order):
                total = 0
                sign = 1
                for idx, c in enumerate(C):
                    v = row[c]
                    if v:
                        total += sign * v * table[(tail, C[:idx] + C[idx + 1:])]
                    sign = -sign
                new[(R, C)] = total
        table = new
        yield order, table


def minors(M, order):
    """Dictionary of all ``order x order`` minors keyed by (rows, cols)."""
    M = as_matrix(M)
    for o, table in iter_minor_tables(M, order):
        if o == order:
            return table
    raise ValueError("order must be >= 1")


def _pow_cmp_greater(a, ta, b, tb):
    # a^(1/ta) > b^(1/tb) for nonnegative rationals
    return a ** tb > b ** ta


@dataclass(frozen=True)
class DeltaStats:
    """Exact subdeterminant statistics of a matrix.

    ``delta_j[j-1]`` is the largest absolute j x j minor and ``gcd_j[j-1]``
    the gcd of all j x j minors.  ``detlb`` is the pair ``(t, Delta_t)``
    maximizing ``Delta_t ** (1/t)``.
    """

    rank: int
    delta_j: tuple
    gcd_j: tuple
    detlb: tuple

    @property
    def max_order(self):
        return len(self.delta_j)

    @property
    def complete(self):
        return self.max_order == self.rank

    @property
    def delta(self):
        if not self.complete:
            raise ValueError("rank-order minors were not enumerated")
        return self.delta_j[-1] if self.rank else 0

    @property
    def delta_gcd(self):
        if not self.complete:
            raise ValueError("rank-order minors were not enumerated")
        return self.gcd_j[-1] if self.rank else 0

    def detlb_value(self):
        t, d = self.detlb
        return float(d) ** (1.0 / t)


def _gcd_rational(values):
    num = 0
    den = 1
    for v in values:
        v = Fraction(v)
        num = gcd(num, v.numerator)
        den = den * v.denominator // gcd(den, v.denominator)
    return Fraction(num, den) if den != 1 else num


def delta_stats(M, max_order=None, cap=DEFAULT_MINOR_CAP) -> DeltaStats:
    M = as_matrix(M)
    k, n = shape(M)
    r = rank(M)
    if max_order is None:
        max_order = r
    if max_order > r:
        raise ValueError(f"max_order {max_order} exceeds rank {r}")
    total = sum(count_minors(k, n, j) for j in range(1, max_order + 1))
    if total > cap:
        raise TooLarge(f"{total} minors exceed the enumeration cap {cap}")
    delta_j, gcd_j = [], []
    best = (1, 0)
    if max_order:
        for order, table in iter_minor_tables(M, max_order):
            values = [abs(v) for v in table.values()]
            d = max(values)
            delta_j.append(d)
            gcd_j.append(_gcd_rational(values))
            if d and (best[1] == 0 or _pow_cmp_greater(d, order, best[1], best[0])):
                best = (order, d)
    return DeltaStats(rank=r, delta_j=tuple(delta_j), gcd_j=tuple(gcd_j), detlb=best)


def max_abs_minor(M, order=None, cap=DEFAULT_MINOR_CAP):
    """Delta of ``M`` at ``order`` (default: its rank)."""
    stats = delta_stats(M, max_order=order, cap=cap)
    return stats.delta_j[-1] if stats.delta_j else 0


# ---------------------------------------------------------------------------
# lattice helpers


def unimodular_completion(M) -> Matrix:
    """Rows ``G`` such that stacking ``M`` over ``G`` is unimodular.

    Requires the maximal minors of ``M`` to be coprime.  With ``M = [H 0] Q``
    the leading block ``H`` is then the identity, so ``M`` is the top of the
    unimodular ``Q`` and the remaining rows of ``Q`` complete it.
    """
    M = as_matrix(M, integer=True)
    k, n = shape(M)
    try:
        form = hnf(M)
    except RankDeficient as exc:
        raise NotPrimitive(f"rows are dependent: {exc}") from None
    if any(d != 1 for d in form.diagonal):
        g = 1
        for d in form.diagonal:
            g *= d
        raise NotPrimitive(f"gcd of maximal minors is {g}, not 1")
    assert form.Q[:k] == M
    return form.Q[k:]


def kernel_basis(M) -> Matrix:
    """Integer basis of ``{x in Z^n : M x = 0}`` as the columns of an n x d matrix."""
    form = hnf(M)
    k, n = shape(form.original)
    return tuple(tuple(row[k:]) for row in form.transform)


# ---------------------------------------------------------------------------
# text format


def parse_matrix_lines(lines, start_line=1):
    """Parse the ``rows cols`` + rows matrix format from an iterator of lines.

    Returns ``(matrix, rest)`` where ``rest`` is the list of remaining
    ``(line_number, text)`` pairs.
    """
    body = [(no, ln.strip()) for no, ln in enumerate(lines, start_line)]
    body = [(no, ln) for no, ln in body if ln and not ln.startswith('#')]
    if not body:
        raise ParseError("empty matrix input")
    no, header = body[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"expected 'rows cols', got {header!r}", no)
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"non-integer dimensions {header!r}", no) from None
    if rows < 1 or cols < 1:
        raise ParseError("dimensions must be positive", no)
    if len(body) < rows + 1:
        raise ParseError(f"expected {rows} matrix rows, found {len(body) - 1}",
                         body[-1][0])
    data = []
    for no, ln in body[1:rows + 1]:
        try:
            row = [int(v) for v in ln.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {ln!r}", no) from None
        if len(row) != cols:
            raise ParseError(f"expected {cols} entries, got {len(row)}", no)
        data.append(row)
    return as_matrix(data), body[rows + 1:]


def parse_matrix(text: str) -> Matrix:
    M, rest = parse_matrix_lines(text.splitlines())
    if rest:
        raise ParseError("trailing content after matrix", rest[0][0])
    return M


def format_matrix(M, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{len(M)} {len(M[0])}")
    out.extend(" ".join(str(v) for v in row) for row in M)
    return "\n".join(out) + "\n"


def format_vector(v: Sequence) -> str:
    return " ".join(str(x) for x in v)
