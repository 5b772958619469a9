from fractions import Fraction

import pytest

from diagfrob import gomory, linalg, oracles
from diagfrob.errors import PreconditionFailed, Singular
from diagfrob.frobenius import gen_tight_instance
from diagfrob.systems import CanonicalSystem, complement

from gen import rand_full_rank, seeded


def test_solve_corner_identity():
    z, y = gomory.solve_corner([[1, 0], [0, 1]], [3, -2])
    assert z == (3, -2) and y == (0, 0)


def test_solve_corner_residues():
    z, y = gomory.solve_corner([[2]], [7])
    assert z == (3,) and y == (1,)


def test_solve_corner_singular():
    with pytest.raises(Singular):
        gomory.solve_corner([[1, 2], [2, 4]], [0, 0])


def test_solve_corner_random_bound():
    rng = seeded(4)
    for _ in range(200):
        n = rng.randint(1, 4)
        AB = rand_full_rank(rng, n, n)
        b = [rng.randint(-50, 50) for _ in range(n)]
        z, y = gomory.solve_corner(AB, b)
        assert all(v >= 0 for v in y)
        assert sum(y) <= abs(linalg.det(AB)) - 1
        assert tuple(a + s for a, s in zip(linalg.matvec(AB, z), y)) == tuple(b)


def test_tight_instance_precondition_fails_by_one():
    sys = gen_tight_instance(3, 2)
    v, slack, violated = gomory.gomory_condition(sys, (0, 1))
    assert violated == 2
    assert slack == (1,)  # p - 2 while p - 1 = 2 is required
    with pytest.raises(PreconditionFailed) as err:
        gomory.solve_canonical_gomory(sys, (0, 1))
    assert err.value.row == 2
    assert err.value.result.precondition_ok is False


def test_canonical_gomory_with_inflated_rhs():
    rng = seeded(12)
    for _ in range(40):
        n = rng.randint(1, 3)
        A = rand_full_rank(rng, n + rng.randint(1, 2), n, -4, 4)
        base = tuple(range(n))
        if linalg.det(linalg.submatrix(A, base)) == 0:
            continue
        sys = CanonicalSystem(A, [0] * len(A))
        delta = sys.delta
        bB = [rng.randint(-6, 6) for _ in base]
        v = linalg.solve(linalg.submatrix(A, base), bB)
        N = complement(base, len(A))
        b = list(bB)
        for i in N:
            need = sum(Fraction(a) * x for a, x in zip(A[i], v)) + delta - 1
            b.append(-(-need.numerator // need.denominator) + rng.randint(0, 2))
        sys = CanonicalSystem(A, b)
        res = gomory.solve_canonical_gomory(sys, base)
        assert res.precondition_ok and res.verified
        assert sys.contains(res.z)


def test_standard_gomory_examples():
    assert gomory.solve_standard_gomory([[2, 3]], [12], [0]) == (6, 0)
    x = gomory.solve_standard_gomory([[1, 1, 1]], [10], [1])
    assert sum(x) == 10 and min(x) >= 0


def test_standard_gomory_precondition():
    with pytest.raises(PreconditionFailed):
        gomory.solve_standard_gomory([[2, 3]], [1], [0])


def test_tight_instance_has_no_integer_point():
    sys = gen_tight_instance(3, 2)
    assert oracles.find_integer_point(sys.A, sys.b) is None
