"""Rounding nonnegative vectors with small error under a linear map.

``round_nonneg`` picks ``z = floor(x) + sigma`` with ``sigma`` a 0/1 vector on
the fractional support of ``x`` and minimizes ``|M (x - z)|_inf``.  Small
supports are solved exhaustively (and the result is certified optimal among
such roundings); larger ones fall back to a seeded local search.  Every
reported error is computed exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, lcm

import numpy as np

from . import linalg
from .errors import TooLarge

DEFAULT_EXHAUSTIVE_CAP = 24
DEFAULT_RESTARTS = 10_000
_CHUNK_BITS = 16
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class RoundingResult:
    z: tuple
    achieved: Fraction
    method: str
    certified: bool
    support: tuple = ()


def _scale(M, cols, r):
    """Integer data ``(c, W, denom)`` with ``M_S (r - sigma) = (c - W sigma) / denom``."""
    dm = lcm(*(Fraction(M[i][j]).denominator for i in range(len(M)) for j in cols)) if cols else 1
    dr = lcm(*(v.denominator for v in r)) if r else 1
    Mi = [[int(Fraction(M[i][j]) * dm) for j in cols] for i in range(len(M))]
    ri = [int(v * dr) for v in r]
    c = [sum(a * b for a, b in zip(row, ri)) for row in Mi]
    W = [[a * dr for a in row] for row in Mi]
    return c, W, dm * dr


def _bits(idx, s):
    return tuple((idx >> (s - 1 - j)) & 1 for j in range(s))


def _min_max_abs(c, W, s):
    """Minimize ``max_i |c_i - sum_j W_ij sigma_j|`` over ``sigma in {0,1}^s``.

    Returns ``(value, sigma)``; ties go to the lexicographically smallest
    sigma, with ``sigma_0`` the most significant position.
    """
    rows = len(c)
    if rows == 0 or s == 0:
        val = max((abs(v) for v in c), default=0)
        return val, (0,) * s
    bound = max(abs(ci) + sum(abs(w) for w in row) for ci, row in zip(c, W))
    if bound >= _INT64_SAFE:
        return _min_max_abs_python(c, W, s)
    Wa = np.array(W, dtype=np.int64).T  # s x rows
    ca = np.array(c, dtype=np.int64)
    low = min(s, _CHUNK_BITS)
    high = s - low
    codes = np.arange(1 << low, dtype=np.int64)
    # low bits are the last `low` positions of sigma
    low_bits = ((codes[:, None] >> np.arange(low - 1, -1, -1)) & 1).astype(np.int64)
    low_contrib = low_bits @ Wa[high:]
    best_val, best_idx = None, None
    for h in range(1 << high):
        hb = np.array(_bits(h, high), dtype=np.int64) if high else np.zeros(0, np.int64)
        base = ca - (hb @ Wa[:high] if high else 0)
        vals = np.abs(base[None, :] - low_contrib).max(axis=1)
        i = int(vals.argmin())
        v = int(vals[i])
        if best_val is None or v < best_val:
            best_val, best_idx = v, (h << low) | i
    return best_val, _bits(best_idx, s)


def _min_max_abs_python(c, W, s):
    best_val, best_sigma = None, None
    cols = list(zip(*W))
    for idx in range(1 << s):
        sigma = _bits(idx, s)
        cur = list(c)
        for j, bit in enumerate(sigma):
            if bit:
                cur = [a - w for a, w in zip(cur, cols[j])]
        v = max(abs(a) for a in cur)
        if best_val is None or v < best_val:
            best_val, best_sigma = v, sigma
    return best_val, best_sigma


def _error(c, cols, sigma):
    cur = list(c)
    for j, bit in enumerate(sigma):
        if bit:
            col = cols[j]
            cur = [a - w for a, w in zip(cur, col)]
    return max((abs(a) for a in cur), default=0)


def _local_search(c, cols, sigma):
    """Single flips and pairwise swaps until no strict improvement."""
    sigma = list(sigma)
    cur = _error(c, cols, sigma)
    s = len(sigma)
    improved = True
    while improved:
        improved = False
        for j in range(s):
            sigma[j] ^= 1
            v = _error(c, cols, sigma)
            if v < cur:
                cur, improved = v, True
            else:
                sigma[j] ^= 1
        for a in range(s):
            for b in range(a + 1, s):
                if sigma[a] == sigma[b]:
                    continue
                sigma[a] ^= 1
                sigma[b] ^= 1
                v = _error(c, cols, sigma)
                if v < cur:
                    cur, improved = v, True
                else:
                    sigma[a] ^= 1
                    sigma[b] ^= 1
    return cur, tuple(sigma)


def _heuristic(c, W, s, seed, restarts):
    cols = list(zip(*W))
    best = _local_search(c, cols, (0,) * s)
    rng = random.Random(seed)
    for _ in range(restarts):
        start = tuple(rng.randint(0, 1) for _ in range(s))
        cand = _local_search(c, cols, start)
        if cand < best:
            best = cand
    return best


def rounding_error(M, x, z) -> Fraction:
    """Exact ``|M (x - z)|_inf`` (0 for an empty M)."""
    if not M:
        return Fraction(0)
    diff = [Fraction(a) - b for a, b in zip(x, z)]
    return max((abs(v) for v in linalg.matvec(M, diff)), default=Fraction(0))


def round_nonneg(M, x, cap=DEFAULT_EXHAUSTIVE_CAP, seed=0,
                 restarts=DEFAULT_RESTARTS) -> RoundingResult:
    """Round ``x >= 0`` to ``z in Z^n_{>=0}``, ``z_i in {floor x_i, ceil x_i}``."""
    x = [Fraction(v) for v in x]
    if any(v < 0 for v in x):
        raise ValueError("round_nonneg requires x >= 0")
    M = tuple(M) if M else ()
    fl = [floor(v) for v in x]
    support = tuple(j for j, v in enumerate(x) if v != fl[j])
    s = len(support)
    if not M or s == 0:
        z = tuple(fl)
        return RoundingResult(z=z, achieved=rounding_error(M, x, z), method='exhaustive',
                              certified=True, support=support)
    r = [x[j] - fl[j] for j in support]
    c, W, denom = _scale(M, support, r)
    if s <= cap:
        _, sigma = _min_max_abs(c, W, s)
        method, certified = 'exhaustive', True
    else:
        _, sigma = _heuristic(c, W, s, seed, restarts)
        method, certified = 'heuristic', False
    z = list(fl)
    for j, bit in zip(support, sigma):
        z[j] += bit
    z = tuple(z)
    return RoundingResult(z=z, achieved=rounding_error(M, x, z), method=method,
                          certified=certified, support=support)


def beck_fiala_envelope(M, support=None) -> Fraction:
    """Largest row l1 norm of ``M`` restricted to ``support`` (all columns by default)."""
    if not M:
        return Fraction(0)
    cols = range(len(M[0])) if support is None else support
    return max(sum((abs(Fraction(row[j])) for j in cols), Fraction(0)) for row in M)


def exact_disc(M, cap=DEFAULT_EXHAUSTIVE_CAP) -> Fraction:
    """``min over z in {-1,1}^n of |M z|_inf`` by enumeration."""
    M = linalg.as_matrix(M)
    n = len(M[0])
    if n > cap:
        raise TooLarge(f"{n} columns exceed the exhaustive cap {cap}")
    # z = 1 - 2 sigma, so M z = M 1 - 2 M sigma
    ones = [Fraction(1)] * n
    c, W, denom = _scale(M, list(range(n)), ones)
    W = [[2 * w for w in row] for row in W]
    val, _ = _min_max_abs(c, W, n)
    return Fraction(val, denom)


@dataclass(frozen=True)
class DiscBound:
    """Which discrepancy bound shape is smallest for ``M`` and an exact envelope.

    ``shapes`` holds the bound expressions evaluated with unit constant; they
    are informational only.  ``numeric_envelope`` is a rigorous upper bound
    on any rounding error of ``round_nonneg`` for this matrix.
    """

    detlb_pair: tuple
    bound_form: str
    numeric_envelope: Fraction
    shapes: dict = field(default_factory=dict)


def disc_bound(M, stats=None) -> DiscBound:
    if not M:
        return DiscBound((1, 0), 'detlb-log', Fraction(0), {})
    M = linalg.as_matrix(M)
    k, n = linalg.shape(M)
    if stats is None:
        try:
            stats = linalg.delta_stats(M)
        except TooLarge:
            stats = linalg.delta_stats(M, max_order=1)
    d1 = stats.delta_j[0] if stats.delta_j else 0
    t, dt = stats.detlb
    detlb = float(dt) ** (1.0 / t) if dt else 0.0
    logk = math.log(max(k, 2))
    logn = math.log(max(n, 2))
    if k >= n:
        spencer = float(d1) * math.sqrt(n * math.log(2 * k / n))
    else:
        spencer = float(d1) * math.sqrt(k)
    shapes = {
        'spencer': spencer,
        'detlb-log': logk * detlb,
        'detlb-sqrtlog': detlb * math.sqrt(logk * logn),
    }
    form = min(shapes, key=lambda key: (shapes[key], key))
    return DiscBound(detlb_pair=stats.detlb, bound_form=form,
                     numeric_envelope=beck_fiala_envelope(M), shapes=shapes)
