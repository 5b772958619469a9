"""Problem containers: canonical systems, standard systems and bases."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import linalg
from .errors import NoBase, ParseError, RankDeficient, Singular


@dataclass(frozen=True)
class CanonicalSystem:
    """``A x <= b`` with ``A`` of shape (n+k) x n and rank n."""

    A: tuple
    b: tuple
    minor_cap: int = field(default=linalg.DEFAULT_MINOR_CAP, compare=False)

    def __post_init__(self):
        A = linalg.as_matrix(self.A, integer=True)
        b = tuple(int(v) for v in self.b)
        if len(b) != len(A):
            raise ValueError(f"b has length {len(b)}, expected {len(A)}")
        object.__setattr__(self, 'A', A)
        object.__setattr__(self, 'b', b)
        if linalg.rank(A) != len(A[0]):
            raise RankDeficient("canonical systems need rank(A) == number of columns")

    @property
    def m(self):
        return len(self.A)

    @property
    def n(self):
        return len(self.A[0])

    @property
    def k(self):
        return self.m - self.n

    @cached_property
    def stats(self) -> linalg.DeltaStats:
        return linalg.delta_stats(self.A, cap=self.minor_cap)

    @property
    def delta(self):
        return self.stats.delta

    def slacks(self, x):
        return tuple(bi - ax for bi, ax in zip(self.b, linalg.matvec(self.A, x)))

    def contains(self, x) -> bool:
        return all(s >= 0 for s in self.slacks(x))

    def with_rhs(self, b) -> 'CanonicalSystem':
        return CanonicalSystem(self.A, b, self.minor_cap)


@dataclass(frozen=True)
class StandardSystem:
    """``A x = b, x >= 0`` with ``A`` of shape k x n and rank k."""

    A: tuple
    b: tuple
    minor_cap: int = field(default=linalg.DEFAULT_MINOR_CAP, compare=False)

    def __post_init__(self):
        A = linalg.as_matrix(self.A, integer=True)
        b = tuple(int(v) for v in self.b)
        if len(b) != len(A):
            raise ValueError(f"b has length {len(b)}, expected {len(A)}")
        object.__setattr__(self, 'A', A)
        object.__setattr__(self, 'b', b)
        if linalg.rank(A) != len(A):
            raise RankDeficient("standard systems need rank(A) == number of rows")

    @property
    def k(self):
        return len(self.A)

    @property
    def n(self):
        return len(self.A[0])

    @cached_property
    def stats(self) -> linalg.DeltaStats:
        return linalg.delta_stats(self.A, cap=self.minor_cap)

    @property
    def delta(self):
        return self.stats.delta

    @property
    def normalized(self) -> bool:
        return self.stats.delta_gcd == 1

    def contains(self, x) -> bool:
        return all(v >= 0 for v in x) and linalg.matvec(self.A, x) == self.b


@dataclass(frozen=True)
class BaseSelection:
    """A base together with ``delta_B = |det A_B|`` and ``M(B)``.

    For canonical systems ``indices`` are rows and ``M = A_N A_B^{-1}``;
    for standard systems they are columns and ``M = A_B^{-1} A_N``.
    """

    indices: tuple
    det_abs: int
    M: tuple
    orientation: str

    @property
    def rows(self):
        return self.indices


def _complement(indices, size):
    chosen = set(indices)
    return tuple(i for i in range(size) if i not in chosen)


def canonical_base(A, rows) -> BaseSelection:
    rows = tuple(sorted(rows))
    m, n = linalg.shape(A)
    if len(rows) != n:
        raise NoBase(f"a base needs {n} rows, got {len(rows)}")
    AB = linalg.submatrix(A, rows)
    d = linalg.det(AB)
    if d == 0:
        raise Singular(f"rows {rows} do not form a base")
    N = _complement(rows, m)
    if N:
        M = linalg.matmul(linalg.submatrix(A, N), linalg.inverse(AB))
    else:
        M = ()
    return BaseSelection(indices=rows, det_abs=abs(d), M=M, orientation='canonical')


def standard_base(A, cols) -> BaseSelection:
    cols = tuple(sorted(cols))
    k, n = linalg.shape(A)
    if len(cols) != k:
        raise NoBase(f"a base needs {k} columns, got {len(cols)}")
    AB = linalg.submatrix(A, None, cols)
    d = linalg.det(AB)
    if d == 0:
        raise Singular(f"columns {cols} do not form a base")
    N = _complement(cols, n)
    if N:
        M = linalg.matmul(linalg.inverse(AB), linalg.submatrix(A, None, N))
    else:
        M = ()
    return BaseSelection(indices=cols, det_abs=abs(d), M=M, orientation='standard')


def complement(indices, size):
    return _complement(indices, size)


# ---------------------------------------------------------------------------
# system text format: a form header, the matrix block, then the rhs line


def parse_system_raw(text: str):
    """``(form, A, b)`` from a system file, without validating the matrix rank."""
    lines = text.splitlines()
    header = next(((no, ln.strip()) for no, ln in enumerate(lines, 1)
                   if ln.strip() and not ln.strip().startswith('#')), None)
    if header is None:
        raise ParseError("empty system file")
    no, form = header
    if form not in ('canonical', 'standard'):
        raise ParseError(f"unknown form header {form!r}", no)
    A, tail = linalg.parse_matrix_lines(lines[no:], start_line=no + 1)
    if len(tail) != 1:
        at = tail[1][0] if len(tail) > 1 else len(lines)
        raise ParseError("expected exactly one right-hand side line after the matrix", at)
    rhs_no, rhs = tail[0]
    try:
        b = tuple(int(v) for v in rhs.split())
    except ValueError:
        raise ParseError(f"non-integer right-hand side {rhs!r}", rhs_no) from None
    if len(b) != len(A):
        raise ParseError(f"right-hand side has {len(b)} entries, expected {len(A)}", rhs_no)
    return form, A, b


def parse_system(text: str):
    form, A, b = parse_system_raw(text)
    if form == 'canonical':
        return CanonicalSystem(A, b)
    return StandardSystem(A, b)


def format_system(sys, comment=None) -> str:
    form = 'canonical' if isinstance(sys, CanonicalSystem) else 'standard'
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(form)
    out.append(linalg.format_matrix(sys.A).rstrip("\n"))
    out.append(linalg.format_vector(sys.b))
    return "\n".join(out) + "\n"
