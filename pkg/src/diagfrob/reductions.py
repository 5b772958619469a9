"""Parameter-preserving maps between canonical and standard systems.

* ``normalize_gcd`` rescales a standard system so that its maximal minors
  become coprime (or proves it integrally infeasible).
* ``standard_to_canonical`` parametrizes ``{x in Z^n : A x = b}`` as
  ``x = b_hat - A_hat t`` and returns the canonical system ``A_hat t <= b_hat``.
* ``canonical_to_modular_standard`` goes the other way through slack
  variables and congruences read off the Smith form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import Degenerate, Infeasible, NotNormalized
from .systems import CanonicalSystem, StandardSystem


@dataclass(frozen=True)
class AffineMap:
    """``v -> matrix v + offset``; ``matrix`` may be empty (constant map)."""

    matrix: tuple
    offset: tuple

    def __call__(self, v):
        if self.matrix:
            out = tuple(a + o for a, o in zip(linalg.matvec(self.matrix, v), self.offset))
        else:
            out = tuple(self.offset)
        return tuple(int(x) if isinstance(x, Fraction) and x.denominator == 1 else x
                     for x in out)


@dataclass(frozen=True)
class SolutionBijection:
    """Affine bijection between the integer solutions of two systems."""

    source: str
    target: str
    forward: AffineMap
    backward: AffineMap
    provenance: str

    def map(self, v):
        return self.forward(v)

    def inverse(self, v):
        return self.backward(v)


def _identity_bijection(n, provenance):
    eye = linalg.identity(n)
    zero = (0,) * n
    return SolutionBijection('standard', 'standard', AffineMap(eye, zero),
                             AffineMap(eye, zero), provenance)


def normalize_gcd(sys: StandardSystem):
    """Equivalent system with coprime maximal minors.

    With ``S = P A Q`` the rows are multiplied by ``S_k^{-1} P``; the new
    matrix ``S_k^{-1} P A`` is integral with maximal-minor gcd 1.  A
    non-integral transformed right-hand side certifies infeasibility.
    """
    if sys.normalized:
        return sys, _identity_bijection(sys.n, 'gcd-normalization (no-op)')
    form = linalg.snf(sys.A)
    k = sys.k
    diag = form.diagonal[:k]
    PA = linalg.matmul(form.P, sys.A)
    Pb = linalg.matvec(form.P, sys.b)
    A2 = tuple(tuple(v // d for v in row) for row, d in zip(PA, diag))
    assert all(v % d == 0 for row, d in zip(PA, diag) for v in row)
    bad = next((i for i, (v, d) in enumerate(zip(Pb, diag)) if v % d), None)
    if bad is not None:
        raise Infeasible(
            f"transformed right-hand side entry {Fraction(Pb[bad], diag[bad])} is not integral",
            reason='gcd')
    b2 = tuple(v // d for v, d in zip(Pb, diag))
    return (StandardSystem(A2, b2, sys.minor_cap),
            _identity_bijection(sys.n, 'gcd-normalization'))


def standard_to_canonical(sys: StandardSystem):
    """Canonical system ``A_hat t <= b_hat`` equivalent to ``A x = b, x >= 0``.

    From the Hermite form ``A U = [I 0]`` (coprime minors force ``H = I``):
    ``b_hat = U [b; 0]`` is a particular solution, the last ``d = n - k``
    columns ``K`` of ``U`` span the integer kernel, and ``A_hat = -K``.
    The inverse map is ``t = G x`` where ``G`` are the last d rows of
    ``U^{-1}``.
    """
    if not sys.normalized:
        raise NotNormalized(
            f"maximal minors have gcd {sys.stats.delta_gcd}; run normalize_gcd first")
    k, n = sys.k, sys.n
    if k == n:
        x = linalg.solve(sys.A, sys.b)
        raise Degenerate("n == k: the system has the unique solution A^{-1} b",
                         solution=linalg.to_int_vector(x))
    form = linalg.hnf(sys.A)
    U, Q = form.transform, form.Q
    x0 = linalg.matvec(U, tuple(sys.b) + (0,) * (n - k))
    K = tuple(row[k:] for row in U)
    A_hat = tuple(tuple(-v for v in row) for row in K)
    G = Q[k:]
    can = CanonicalSystem(A_hat, x0, sys.minor_cap)
    bij = SolutionBijection(
        'standard', 'canonical',
        forward=AffineMap(G, (0,) * (n - k)),
        backward=AffineMap(K, x0),
        provenance='standard-to-canonical via unimodular completion',
    )
    return can, bij


@dataclass(frozen=True)
class ModularStandardSystem:
    """``A x = b``, ``G x = g (mod S)``, ``x >= 0`` integral.

    Stacking ``A`` over ``G`` gives a unimodular matrix and ``S`` is a
    diagonal matrix in Smith form.
    """

    A: tuple
    G: tuple
    S: tuple
    g: tuple
    b: tuple

    @property
    def moduli(self):
        return tuple(self.S[i][i] for i in range(len(self.S)))

    def contains(self, x) -> bool:
        if any(v < 0 for v in x):
            return False
        if self.A and linalg.matvec(self.A, x) != tuple(self.b):
            return False
        for gx, gi, s in zip(linalg.matvec(self.G, x), self.g, self.moduli):
            if (gx - gi) % s:
                return False
        return True


def canonical_to_modular_standard(sys: CanonicalSystem):
    """Slack reformulation of ``A x <= b`` as a modular standard system.

    With ``S = P A Q`` (Smith form, m x n) put ``x_hat = b - A x``.  Then
    ``P x_hat = P b - S Q^{-1} x``: the last k rows of P give the equations
    ``A_hat x_hat = b_hat`` and the first n rows give congruences modulo the
    invariant factors.
    """
    n = sys.n
    form = linalg.snf(sys.A)
    P = form.P
    Pb = linalg.matvec(P, sys.b)
    diag = form.diagonal[:n]
    S = tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n))
    mod = ModularStandardSystem(
        A=tuple(P[n:]), G=tuple(P[:n]), S=S,
        g=tuple(v % s for v, s in zip(Pb[:n], diag)), b=tuple(Pb[n:]))
    # inverse: x = Q diag(1/s) (P (b - x_hat))[:n]
    scaled = tuple(tuple(Fraction(v, diag[i]) for v in P[i]) for i in range(n))
    back_mat = linalg.matmul(form.Q, scaled)
    back_off = linalg.matvec(back_mat, sys.b)
    bij = SolutionBijection(
        'canonical', 'modular-standard',
        forward=AffineMap(tuple(tuple(-v for v in row) for row in sys.A), sys.b),
        backward=AffineMap(tuple(tuple(-v for v in row) for row in back_mat), back_off),
        provenance='canonical-to-modular-standard via Smith form',
    )
    return mod, bij
