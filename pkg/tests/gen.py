"""Random instance generators and small independent oracles shared by the tests."""

import random
from fractions import Fraction
from itertools import permutations

from diagfrob import linalg


def rand_matrix(rng, k, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(k)]


def rand_full_rank(rng, k, n, lo=-9, hi=9):
    """k x n with rank min(k, n)."""
    while True:
        M = rand_matrix(rng, k, n, lo, hi)
        if linalg.rank(M) == min(k, n):
            return M


def perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def leibniz_det(M):
    """Determinant by the permutation expansion; independent of Bareiss."""
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        term = perm_sign(p)
        for i in range(n):
            term *= M[i][p[i]]
        total += term
    return total


def cofactor_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if M[0][j])


def as_fraction_vec(v):
    return [Fraction(x) for x in v]


def seeded(seed):
    return random.Random(seed)
