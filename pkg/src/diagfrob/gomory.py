"""Integer points of the Gomory corner polyhedron and the local feasibility test.

For a base B of ``A x <= b`` the corner relaxation keeps only the rows of B.
An integer point of it with small base slacks is read off the Hermite form
of ``A_B``; when the non-base rows have slack at least ``Delta - 1`` at the
vertex ``A_B^{-1} b_B`` that point is feasible for the whole system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg
from . import reductions
from .errors import Degenerate, PreconditionFailed, RankDeficient, Singular
from .systems import (BaseSelection, CanonicalSystem, StandardSystem, canonical_base,
                      complement)


def solve_corner(AB, bB):
    """Integer ``z`` with ``A_B z + y = b_B`` and ``0 <= y``, ``|y|_1 <= |det A_B| - 1``.

    With ``A_B = H Q`` (H lower triangular), substitute ``w = Q z`` and pick
    each ``w_i`` so that ``y_i = (b - H w)_i`` lands in ``[0, H_ii - 1]``.
    """
    AB = linalg.as_matrix(AB, integer=True)
    n = len(AB)
    if len(AB[0]) != n:
        raise ValueError("A_B must be square")
    try:
        form = linalg.hnf(AB)
    except RankDeficient:
        raise Singular("A_B is singular") from None
    H = form.H
    w = [0] * n
    y = [0] * n
    for i in range(n):
        r = bB[i] - sum(H[i][j] * w[j] for j in range(i))
        w[i], y[i] = divmod(r, H[i][i])
    z = linalg.matvec(form.transform, w)
    return tuple(z), tuple(y)


@dataclass(frozen=True)
class GomoryResult:
    z: tuple
    slack_B: tuple
    slack_rest: tuple
    base: BaseSelection
    delta: int
    vertex: tuple
    vertex_slack_rest: tuple
    precondition_ok: bool
    violated_row: Optional[int]
    verified: bool


def _as_base(sys, base):
    if isinstance(base, BaseSelection):
        return base
    return canonical_base(sys.A, base)


def gomory_condition(sys: CanonicalSystem, base, delta=None):
    """Vertex, non-base slacks at the vertex, and the first violated row (or None)."""
    base = _as_base(sys, base)
    delta = sys.delta if delta is None else delta
    rows = base.indices
    N = complement(rows, sys.m)
    v = linalg.solve(linalg.submatrix(sys.A, rows), [sys.b[i] for i in rows])
    AN = linalg.submatrix(sys.A, N)
    slack = tuple(Fraction(sys.b[i]) - ax for i, ax in zip(N, linalg.matvec(AN, v)))
    violated = next((N[j] for j, s in enumerate(slack) if s < delta - 1), None)
    return v, slack, violated


def solve_canonical_gomory(sys: CanonicalSystem, base, delta=None, strict=True) -> GomoryResult:
    """Integer point of ``A x <= b`` from the corner polyhedron of ``base``.

    ``delta`` defaults to the certified Delta(A) of ``sys``.  If the slack
    condition fails and ``strict`` is set, :class:`PreconditionFailed` is
    raised with the (still verified-or-not) result attached.
    """
    base = _as_base(sys, base)
    delta = sys.delta if delta is None else delta
    rows = base.indices
    N = complement(rows, sys.m)
    v, vslack, violated = gomory_condition(sys, base, delta)
    z, y = solve_corner(linalg.submatrix(sys.A, rows), [sys.b[i] for i in rows])
    AN = linalg.submatrix(sys.A, N) if N else ()
    rest = tuple(sys.b[i] - ax for i, ax in zip(N, linalg.matvec(AN, z))) if N else ()
    result = GomoryResult(
        z=z, slack_B=y, slack_rest=rest, base=base, delta=delta,
        vertex=tuple(v), vertex_slack_rest=vslack,
        precondition_ok=violated is None, violated_row=violated,
        verified=all(s >= 0 for s in rest),
    )
    if violated is not None and strict:
        raise PreconditionFailed(
            f"row {violated}: slack at the vertex is below Delta - 1 = {delta - 1}",
            row=violated, result=result)
    return result


def solve_standard_gomory(A, b, base, delta=None, strict=True) -> tuple:
    """Nonnegative integer solution of ``A x = b`` when ``A_B^{-1} b >= (Delta - 1) 1``.

    The system is normalized and mapped to canonical form; the standard base
    B becomes the canonical base formed by the complementary rows.
    """
    sys = StandardSystem(A, b)
    cols = tuple(sorted(base.indices if isinstance(base, BaseSelection) else base))
    if not sys.normalized:
        sys, _ = reductions.normalize_gcd(sys)
    try:
        can, bij = reductions.standard_to_canonical(sys)
    except Degenerate as exc:
        x = exc.solution
        if strict and min(x) < delta_or(sys, delta) - 1:
            raise PreconditionFailed("basic solution below Delta - 1", row=0, result=None)
        return x
    rows = complement(cols, sys.n)
    res = solve_canonical_gomory(can, rows, delta=delta_or(sys, delta), strict=False)
    x = bij.inverse(res.z)
    if not res.precondition_ok and strict:
        raise PreconditionFailed(
            f"column {res.violated_row}: basic solution below Delta - 1",
            row=res.violated_row, result=x)
    return x


def delta_or(sys, delta):
    return sys.delta if delta is None else delta
