"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (collected again in the
pytest terminal summary).  Run directly with ``python tests/test_acceptance.py``
to get just those lines.  All comparisons are exact; the two timed criteria
have their budgets pinned below.
"""

import sys
import time
from fractions import Fraction
from itertools import combinations, product
from math import floor, gcd
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from diagfrob import basefind, discrepancy, frobenius, gomory, linalg, lp, oracles, reductions
from diagfrob.errors import BudgetExceeded, NoSlackPoint, Unbounded
from diagfrob.systems import CanonicalSystem, StandardSystem

from gen import rand_full_rank, rand_matrix, seeded

NORMAL_FORM_BUDGET_S = 60.0
ROUNDING_BUDGET_S = 120.0
ENUMERATION_LIMIT = 10**5


def _record(lines, number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})"
    print(line)
    if lines is not None:
        lines.append(line)
    assert ok, line


def _direct_minor_gcds(M, r):
    out = []
    for j in range(1, r + 1):
        g = 0
        for R in combinations(range(len(M)), j):
            for C in combinations(range(len(M[0])), j):
                g = gcd(g, linalg.det([[M[a][b] for b in C] for a in R]))
        out.append(abs(g))
    return out


def check_normal_forms(lines=None):
    rng = seeded(1001)
    start = time.perf_counter()
    failures, hnf_count, direct = 0, 0, 0
    for trial in range(1000):
        k, n = rng.randint(1, 5), rng.randint(1, 9)
        M = rand_matrix(rng, k, n)
        f = linalg.snf(M)
        r = linalg.rank(M)
        ok = linalg.matmul(linalg.matmul(f.P, M), f.Q) == f.S
        ok &= abs(linalg.det(f.P)) == 1 and abs(linalg.det(f.Q)) == 1
        s = f.invariant_factors
        ok &= len(s) == r and all(s[i + 1] % s[i] == 0 for i in range(r - 1))
        stats = linalg.delta_stats(M)
        gcds = stats.gcd_j
        if trial < 100:
            gcds_direct = _direct_minor_gcds(M, r)
            ok &= list(gcds) == gcds_direct
            direct += 1
        prod = 1
        for j in range(r):
            prod *= s[j]
            ok &= prod == gcds[j]
        if r == k:
            h = linalg.hnf(M)
            ok &= linalg.matmul(h.H, h.Q) == linalg.as_matrix(M)
            ok &= abs(linalg.det(h.Q)) == 1
            ok &= all(h.H[i][i] > 0 and all(0 <= h.H[i][j] < h.H[i][i] for j in range(i))
                      and all(h.H[i][j] == 0 for j in range(i + 1, n)) for i in range(k))
            hnf_count += 1
        failures += not ok
    elapsed = time.perf_counter() - start
    _record(lines, 1, "normal forms", failures == 0 and elapsed <= NORMAL_FORM_BUDGET_S,
            f"1000 matrices, {hnf_count} with HNF, {direct} minor gcds by direct enumeration, "
            f"{failures} failures, {elapsed:.1f}s of {NORMAL_FORM_BUDGET_S:.0f}s")


def check_corner_slack_bound(lines=None):
    rng = seeded(1002)
    failures = 0
    for _ in range(1000):
        n = rng.randint(1, 5)
        AB = rand_full_rank(rng, n, n)
        b = [rng.randint(-100, 100) for _ in range(n)]
        z, y = gomory.solve_corner(AB, b)
        ok = all(v >= 0 for v in y) and sum(y) <= abs(linalg.det(AB)) - 1
        ok &= all(isinstance(v, int) for v in z)
        ok &= tuple(a + s for a, s in zip(linalg.matvec(AB, z), y)) == tuple(b)
        failures += not ok
    _record(lines, 2, "corner slack bound", failures == 0,
            f"1000 invertible bases, {failures} failures")


def _inflated_system(rng, n, k, lo=-3, hi=3):
    """Canonical system whose first n rows form a base meeting the slack condition."""
    while True:
        A = rand_full_rank(rng, n + k, n, lo, hi)
        if linalg.det(linalg.submatrix(A, range(n))) != 0:
            break
    delta = CanonicalSystem(A, [0] * len(A)).delta
    bB = [rng.randint(-5, 5) for _ in range(n)]
    v = linalg.solve(linalg.submatrix(A, range(n)), bB)
    b = list(bB)
    for i in range(n, n + k):
        need = sum(Fraction(a) * x for a, x in zip(A[i], v)) + delta - 1
        b.append(-((-need.numerator) // need.denominator) + rng.randint(0, 3))
    return CanonicalSystem(A, b)


def check_canonical_gomory(lines=None):
    rng = seeded(1003)
    failures, enumerated = 0, 0
    for _ in range(300):
        n, k = rng.randint(1, 4), rng.randint(1, 4)
        sys = _inflated_system(rng, n, k)
        res = gomory.solve_canonical_gomory(sys, tuple(range(n)))
        z = res.z
        ok = res.precondition_ok and all(
            bi - sum(a * x for a, x in zip(row, z)) >= 0 for row, bi in zip(sys.A, sys.b))
        try:
            if oracles.recession_rays(sys.A):
                ok &= oracles.find_integer_point(sys.A, sys.b, limit=ENUMERATION_LIMIT) is not None
            else:
                pts = oracles.integer_points(sys.A, sys.b, limit=ENUMERATION_LIMIT)
                ok &= tuple(z) in set(pts)
            enumerated += 1
        except BudgetExceeded:
            pass
        failures += not ok
    _record(lines, 3, "canonical Gomory end-to-end", failures == 0,
            f"300 systems, {enumerated} confirmed by lattice enumeration, {failures} failures")


def check_tight_family(lines=None):
    failures, cases = 0, 0
    for p in range(2, 11):
        for n in (1, 2, 3):
            sys = frobenius.gen_tight_instance(p, n)
            half = Fraction(p - 2, 2)
            ok = oracles.find_integer_point(sys.A, sys.b) is None
            x = frobenius.tight_instance_slack_point(p, n)
            ok &= set(sys.slacks(x)) == {half}
            ok &= lp.max_min_slack(sys).min_slack == half
            ok &= sys.delta == p
            _, slack, violated = gomory.gomory_condition(sys, tuple(range(n)))
            ok &= violated == n and slack == (p - 2,) and sys.delta - 1 - slack[0] == 1
            failures += not ok
            cases += 1
    _record(lines, 4, "tight family", failures == 0,
            f"p = 2..10, n = 1..3: {cases} instances, {failures} failures")


def check_threshold_honesty(lines=None):
    rng = seeded(1005)
    met, failures, enumerated, attempts = 0, 0, 0, 0
    while met < 300:
        attempts += 1
        n, k = rng.randint(1, 3), rng.randint(1, 3)
        A = rand_full_rank(rng, n + k, n, -3, 3)
        delta = CanonicalSystem(A, [0] * len(A)).delta
        b = [rng.randint(-2, 2 * delta + 4) for _ in A]
        sys = CanonicalSystem(A, b)
        mode = frobenius.MODES[attempts % 3]
        search = frobenius.choose_base(sys, mode)
        try:
            sp = lp.max_min_slack(sys)
        except Unbounded:
            sp = None  # unbounded slack: hypothesis holds for any threshold
        if sp is not None:
            if sp.min_slack < 0:
                continue
            rows = search.base.indices
            yB = [Fraction(sys.b[i]) - sum(Fraction(a) * x for a, x in zip(sys.A[i], sp.x))
                  for i in rows]
            gamma = discrepancy.round_nonneg(search.base.M, yB).achieved
            if sp.min_slack < delta - 1 + gamma:
                continue
        met += 1
        try:
            cert = frobenius.solve_canonical_with_slack(sys, mode)
        except NoSlackPoint:
            failures += 1
            continue
        ok = cert.verified and frobenius.verify_certificate(cert)
        try:
            ok &= oracles.find_integer_point(sys.A, sys.b, limit=ENUMERATION_LIMIT) is not None
            enumerated += 1
        except BudgetExceeded:
            pass
        failures += not ok
    _record(lines, 5, "slack threshold honesty", failures == 0,
            f"{met} systems meeting the slack hypothesis out of {attempts} drawn, "
            f"{enumerated} enumeration cross-checks, {failures} failures")


def _max_minor(M, i):
    best = 0
    for R in combinations(range(len(M)), i):
        for C in combinations(range(len(M[0])), i):
            best = max(best, abs(linalg.det([[M[r][c] for c in C] for r in R])))
    return best


def check_base_search(lines=None):
    rng = seeded(1006)
    c = basefind.C_E
    failures, swaps, sweep_cases, tightest = 0, 0, 0, Fraction(0)
    for _ in range(100):
        k = rng.randint(1, 4)
        A = rand_full_rank(rng, k, k + rng.randint(1, 5))
        rep = basefind.poly_subdet_search(A)
        full = linalg.matmul(linalg.inverse(linalg.submatrix(A, None, rep.base.indices)), A)
        ok = all(abs(v) <= c for row in full for v in row)
        ok &= all(s.growth > c for s in rep.swaps) and basefind.swap_growth_consistent(rep)
        swaps += len(rep.swaps)
        failures += not ok
    for _ in range(40):
        k = rng.randint(1, 6)
        A = rand_full_rank(rng, k, k + rng.randint(1, 3), -5, 5)
        rep = basefind.exp_subdet_search(A)
        full = linalg.matmul(linalg.inverse(linalg.submatrix(A, None, rep.base.indices)), A)
        ok = rep.guarantee == 'deltai_le_exp'
        for i in range(1, k + 1):
            d = _max_minor(full, i)
            ok &= d <= c ** (i + 1)
            tightest = max(tightest, d / c ** i)
        ok &= all(s.growth > c for s in rep.swaps) and basefind.swap_growth_consistent(rep)
        swaps += len(rep.swaps)
        sweep_cases += 1
        failures += not ok
    _record(lines, 6, "base search guarantees", failures == 0,
            f"100 pivoting runs, {sweep_cases} sweeps with k <= 6, {swaps} swaps, "
            f"max Delta_i / c^i = {float(tightest):.3f}, {failures} failures")


def check_reduction_roundtrip(lines=None):
    rng = seeded(1007)
    failures, done, solutions = 0, 0, 0
    while done < 200:
        k = rng.randint(1, 3)
        n = rng.randint(k + 1, 6)
        A = rand_matrix(rng, k, n, 0, 4)
        if any(all(A[i][j] == 0 for i in range(k)) for j in range(n)):
            continue
        if linalg.rank(A) < k:
            continue
        b = [rng.randint(0, 12) for _ in range(k)]
        sys = StandardSystem(A, b)
        if not sys.normalized:
            continue
        done += 1
        can, bij = reductions.standard_to_canonical(sys)
        std = set(oracles.standard_integer_solutions(A, b, limit=10**6))
        canon = oracles.integer_points(can.A, can.b, limit=10**6)
        mapped = [bij.inverse(t) for t in canon]
        ok = set(mapped) == std and len(mapped) == len(std)
        ok &= all(bij.map(bij.inverse(t)) == tuple(t) for t in canon)
        ok &= all(bij.inverse(bij.map(x)) == x for x in std)
        ok &= linalg.delta_stats(can.A).delta == sys.delta
        ok &= linalg.delta_stats(can.A).delta_gcd == 1
        solutions += len(std)
        failures += not ok
    _record(lines, 7, "reduction round trip", failures == 0,
            f"200 standard systems, {solutions} solutions matched, {failures} failures")


def _brute_round(M, x):
    fl = [floor(v) for v in x]
    support = [j for j, v in enumerate(x) if v != fl[j]]
    best = None
    for bits in product((0, 1), repeat=len(support)):
        z = list(fl)
        for j, bit in zip(support, bits):
            z[j] += bit
        err = max(abs(sum(Fraction(a) * (xv - zv) for a, xv, zv in zip(row, x, z)))
                  for row in M)
        best = err if best is None else min(best, err)
    return best


def check_rounding(lines=None):
    rng = seeded(1008)
    start = time.perf_counter()
    failures = 0
    for _ in range(500):
        k, n = rng.randint(1, 4), rng.randint(1, 10)
        M = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(k)]
        x = [Fraction(rng.randint(0, 30), rng.choice((1, 2, 3, 4, 7))) for _ in range(n)]
        r = discrepancy.round_nonneg(M, x)
        ok = r.certified and r.achieved == _brute_round(M, x)
        ok &= r.achieved <= discrepancy.beck_fiala_envelope(M, r.support)
        failures += not ok
    elapsed = time.perf_counter() - start
    _record(lines, 8, "rounding certification", failures == 0 and elapsed <= ROUNDING_BUDGET_S,
            f"500 instances with <= 10 columns, {failures} failures, "
            f"{elapsed:.1f}s of {ROUNDING_BUDGET_S:.0f}s")


def check_semigroup(lines=None):
    failures, successes, negatives = 0, 0, 0
    for gens in ((2, 3), (6, 10, 15)):
        reach = oracles.semigroup_representable(gens, 300)
        for b in range(301):
            try:
                cert = frobenius.solve_standard_with_slack(StandardSystem([list(gens)], [b]))
            except NoSlackPoint:
                negatives += 1
                continue
            ok = cert.verified and reach[b]
            ok &= sum(g * z for g, z in zip(gens, cert.z)) == b and min(cert.z) >= 0
            successes += 1
            failures += not ok
    _record(lines, 9, "standard pipeline vs semigroup oracle", failures == 0,
            f"b = 0..300 for (2 3) and (6 10 15): {successes} certificates, "
            f"{negatives} slack refusals, {failures} contradictions")


CHECKS = [check_normal_forms, check_corner_slack_bound, check_canonical_gomory,
          check_tight_family, check_threshold_honesty, check_base_search,
          check_reduction_roundtrip, check_rounding, check_semigroup]


def test_criterion_1_normal_forms(acceptance_lines):
    check_normal_forms(acceptance_lines)


def test_criterion_2_corner_slack_bound(acceptance_lines):
    check_corner_slack_bound(acceptance_lines)


def test_criterion_3_canonical_gomory(acceptance_lines):
    check_canonical_gomory(acceptance_lines)


def test_criterion_4_tight_family(acceptance_lines):
    check_tight_family(acceptance_lines)


def test_criterion_5_threshold_honesty(acceptance_lines):
    check_threshold_honesty(acceptance_lines)


def test_criterion_6_base_search(acceptance_lines):
    check_base_search(acceptance_lines)


def test_criterion_7_reduction_roundtrip(acceptance_lines):
    check_reduction_roundtrip(acceptance_lines)


def test_criterion_8_rounding(acceptance_lines):
    check_rounding(acceptance_lines)


def test_criterion_9_semigroup(acceptance_lines):
    check_semigroup(acceptance_lines)


if __name__ == '__main__':
    failed = 0
    for check in CHECKS:
        try:
            check()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
