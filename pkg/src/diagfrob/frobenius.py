"""Slack-rounding pipelines for canonical and standard systems.

Given a real point ``x`` whose constraint slacks are all at least
``t = Delta - 1 + gamma``, the canonical pipeline

1. picks a base B (max-determinant, polynomial pivoting or subset sweep),
2. rounds the base slacks ``y_B = b_B - A_B x`` to a nonnegative integer
   vector ``z`` with ``|A_N A_B^{-1} (y_B - z)|_inf = gamma``,
3. tightens the base rows to ``b_B - z`` and runs the corner-polyhedron
   construction on the tightened system.

The returned integer point satisfies the original system because the
tightening only removed room from the base rows.  ``gamma`` is the exact
rounding error actually achieved, not an asymptotic bound.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from . import basefind, discrepancy, gomory, linalg, lp, reductions
from .errors import (Degenerate, Infeasible, NoSlackPoint, NotNormalized, PipelineFailed,
                     Unbounded)
from .systems import CanonicalSystem, StandardSystem, canonical_base, complement

MODES = ('maxdet', 'poly', 'exp')


@dataclass(frozen=True)
class FeasibilityCertificate:
    form: str
    A: tuple
    b: tuple
    z: tuple
    mode: str
    delta: int
    verified: bool
    base: Optional[object] = None
    search: Optional[object] = None
    rounding: Optional[object] = None
    threshold_t: Optional[Fraction] = None
    slack_input: Optional[object] = None
    shifted_b: Optional[tuple] = None
    gomory: Optional[object] = None
    bound: Optional[object] = None
    canonical: Optional['FeasibilityCertificate'] = None


def choose_base(sys: CanonicalSystem, mode='maxdet', base=None,
                maxdet_cap=basefind.DEFAULT_MAXDET_CAP,
                k_cap=basefind.DEFAULT_SWEEP_K_CAP) -> basefind.BaseSearchReport:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == 'exp' and sys.k > k_cap:
        from .errors import BudgetExceeded
        raise BudgetExceeded(f"2^{sys.k} subsets exceed the sweep budget (k <= {k_cap})")
    if sys.k == 0:
        sel = canonical_base(sys.A, range(sys.m))
        return basefind.BaseSearchReport(base=sel, iterations=0, swaps=(),
                                         guarantee='maxdet_exact', initial_det=sel.det_abs)
    if base is not None:
        sel = canonical_base(sys.A, base)
        if mode == 'maxdet':
            return basefind.BaseSearchReport(base=sel, iterations=0, swaps=(),
                                             guarantee='maxdet_given', initial_det=sel.det_abs)
        if mode == 'exp':
            return basefind.exp_subdet_search_dual(sys.A, base=sel.indices, k_cap=k_cap,
                                                   maxdet_cap=maxdet_cap)
        rep = basefind.poly_subdet_search(linalg.transpose(sys.A), base=sel.indices)
        return replace(rep, base=canonical_base(sys.A, rep.base.indices))
    if mode == 'maxdet':
        return basefind.canonical_maxdet_base(sys.A, cap=maxdet_cap)
    if mode == 'poly':
        return basefind.canonical_poly_base(sys.A)
    return basefind.exp_subdet_search_dual(sys.A, k_cap=k_cap, maxdet_cap=maxdet_cap)


def _slack_input(sys, delta, envelope):
    try:
        return lp.max_min_slack(sys)
    except Unbounded as exc:
        start = exc.point
        need = Fraction(delta - 1) + envelope
        lam = max(Fraction(0), need - start.min_slack)
        x = tuple(xi + lam * di for xi, di in zip(start.x, exc.ray))
        return lp.slack_point(sys.A, sys.b, x)


def solve_canonical_with_slack(sys: CanonicalSystem, mode='maxdet', base=None, *,
                               seed=0, rounding_cap=discrepancy.DEFAULT_EXHAUSTIVE_CAP,
                               restarts=discrepancy.DEFAULT_RESTARTS,
                               maxdet_cap=basefind.DEFAULT_MAXDET_CAP,
                               k_cap=basefind.DEFAULT_SWEEP_K_CAP) -> FeasibilityCertificate:
    """Integer point of ``A x <= b`` certified through slack rounding.

    Raises :class:`NoSlackPoint` when the best available uniform slack is
    below the threshold ``Delta - 1 + gamma`` required for the chosen base.
    """
    delta = sys.delta
    search = choose_base(sys, mode, base, maxdet_cap=maxdet_cap, k_cap=k_cap)
    sel = search.base
    rows = sel.indices
    M = sel.M
    envelope = discrepancy.beck_fiala_envelope(M)
    point = _slack_input(sys, delta, envelope)
    available = point.min_slack
    if available < 0:
        raise NoSlackPoint(
            f"no real point has nonnegative slack (best {available})",
            required=Fraction(delta - 1), available=available)
    x = point.x
    AB = linalg.submatrix(sys.A, rows)
    yB = tuple(Fraction(sys.b[i]) - ax for i, ax in zip(rows, linalg.matvec(AB, x)))
    rounding = discrepancy.round_nonneg(M, yB, cap=rounding_cap, seed=seed, restarts=restarts)
    t = Fraction(delta - 1) + rounding.achieved
    if available < t:
        raise NoSlackPoint(
            f"available uniform slack {available} is below the required {t} "
            f"(Delta - 1 = {delta - 1}, rounding error {rounding.achieved})",
            required=t, available=available)
    shifted = list(sys.b)
    for i, zi in zip(rows, rounding.z):
        shifted[i] -= zi
    shifted = tuple(shifted)
    gres = gomory.solve_canonical_gomory(sys.with_rhs(shifted), sel, delta=delta, strict=False)
    z = gres.z
    cert = FeasibilityCertificate(
        form='canonical', A=sys.A, b=sys.b, z=z, mode=mode, delta=delta,
        verified=sys.contains(z), base=sel, search=search, rounding=rounding,
        threshold_t=t, slack_input=point, shifted_b=shifted, gomory=gres,
        bound=discrepancy.disc_bound(M) if M else None)
    if not gres.precondition_ok:
        raise PipelineFailed(
            f"slack condition failed after rounding at row {gres.violated_row}",
            certificate=cert)
    return cert


def solve_standard_with_slack(sys: StandardSystem, mode='maxdet', base=None,
                              **kwargs) -> FeasibilityCertificate:
    """Nonnegative integer solution of ``A x = b`` via the canonical pipeline.

    ``base`` (optional) is a standard base, i.e. k columns; the canonical
    side then uses the complementary rows.
    """
    if not sys.normalized:
        raise NotNormalized(
            f"maximal minors have gcd {sys.stats.delta_gcd}; run normalize_gcd first")
    try:
        can, bij = reductions.standard_to_canonical(sys)
    except Degenerate as exc:
        x = exc.solution
        if min(x) < 0:
            raise Infeasible(f"the unique solution {x} has a negative entry",
                             reason='degenerate') from None
        return FeasibilityCertificate(form='standard', A=sys.A, b=sys.b, z=x, mode=mode,
                                      delta=sys.delta, verified=sys.contains(x))
    rows = complement(base, sys.n) if base is not None else None
    try:
        ccert = solve_canonical_with_slack(can, mode, rows, **kwargs)
    except PipelineFailed as exc:
        c = exc.certificate
        z = bij.inverse(c.z)
        exc.certificate = replace(c, form='standard', A=sys.A, b=sys.b, z=z,
                                  verified=sys.contains(z), canonical=c)
        raise
    z = bij.inverse(ccert.z)
    return replace(ccert, form='standard', A=sys.A, b=sys.b, z=z,
                   verified=sys.contains(z), canonical=ccert)


def verify_certificate(cert: FeasibilityCertificate) -> bool:
    """Re-check the certificate's point against its system, independently of the pipeline."""
    if cert.form == 'canonical':
        return all(bi - ax >= 0 for bi, ax in zip(cert.b, linalg.matvec(cert.A, cert.z)))
    return (all(v >= 0 for v in cert.z)
            and linalg.matvec(cert.A, cert.z) == tuple(cert.b))


def gen_tight_instance(p: int, n: int) -> CanonicalSystem:
    """Integer-infeasible (n+1) x n system with a point of uniform slack (p-2)/2.

    Rows: ``x_i <= 0`` for i < n, ``p x_n <= p - 1`` and ``-p x_n <= -1``.
    """
    if p < 2 or n < 1:
        raise ValueError("need p >= 2 and n >= 1")
    A = []
    for i in range(n):
        row = [0] * n
        row[i] = 1 if i < n - 1 else p
        A.append(row)
    last = [0] * n
    last[-1] = -p
    A.append(last)
    b = [0] * (n - 1) + [p - 1, -1]
    return CanonicalSystem(A, b)


def tight_instance_slack_point(p: int, n: int) -> tuple:
    """The point whose slack is exactly (p-2)/2 on every row of the tight instance."""
    h = Fraction(p - 2, 2)
    return tuple([-h] * (n - 1) + [Fraction(1, 2)])
