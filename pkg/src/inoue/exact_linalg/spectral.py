"""Eigen-data of the defining matrices.

2x2 matrices get exact eigenvalues and eigenvectors in Q(sqrt(D)); 3x3 matrices
only get the exact checks needed for validation plus floating eigen-data.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .intmat import IntMat, as_mat, charpoly2, charpoly3
from .quadext import QuadExt


class SpectralError(ValueError):
    """The matrix does not satisfy the spectral condition of its surface type."""


def _canonical_eigenvector(n: IntMat, lam: QuadExt) -> tuple[QuadExt, QuadExt]:
    (n11, n12), (n21, n22) = n
    if n12 != 0:
        v = (QuadExt(n12, 0, lam.D), lam - n11)
    else:
        v = (lam - n22, QuadExt(n21, 0, lam.D))
    lead = next(x for x in v if x)
    if lead.sign() < 0:
        v = (-v[0], -v[1])
    return v


def eigen_data(n: IntMat, kind: str) -> tuple[QuadExt, tuple[QuadExt, QuadExt], tuple[QuadExt, QuadExt]]:
    """Return ``(alpha, a, b)`` for an S+ or S- matrix.

    ``alpha > 1`` is the larger eigenvalue, ``a`` its eigenvector and ``b`` the
    eigenvector of ``det(n) / alpha``; both have positive first nonzero coordinate.
    """
    n = as_mat(n)
    if len(n) != 2 or len(n[0]) != 2:
        raise SpectralError("expected a 2x2 matrix")
    tr, d = charpoly2(n)
    if kind == "S+":
        if d != 1:
            raise SpectralError(f"S+ needs det N = 1, got {d}")
        if tr <= 2:
            raise SpectralError(f"S+ needs eigenvalues alpha > 1, 1/alpha (tr N > 2), got tr {tr}")
    elif kind == "S-":
        if d != -1:
            raise SpectralError(f"S- needs det N = -1, got {d}")
        if tr < 1:
            raise SpectralError(f"S- needs eigenvalues alpha > 1, -1/alpha (tr N >= 1), got tr {tr}")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    disc = tr * tr - 4 * d
    alpha = QuadExt(Fraction(tr, 2), Fraction(1, 2), disc)
    beta = QuadExt(Fraction(tr, 2), Fraction(-1, 2), disc)
    assert alpha > 1 and alpha * beta == d
    return alpha, _canonical_eigenvector(n, alpha), _canonical_eigenvector(n, beta)


def cubic_discriminant(c2: int, c1: int, c0: int) -> int:
    """Discriminant of x^3 + c2 x^2 + c1 x + c0."""
    b, c, d = c2, c1, c0
    return 18 * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * c ** 3 - 27 * d * d


def cubic_eval(coeffs: tuple[int, int, int], x):
    c2, c1, c0 = coeffs
    return ((x + c2) * x + c1) * x + c0


def s0_conditions(m: IntMat) -> list[str]:
    """Violated S0 conditions for a 3x3 matrix (empty list means valid).

    With negative discriminant the cubic has exactly one real root and is
    negative to its left, so the root exceeds 1 iff the polynomial is negative at 1.
    """
    m = as_mat(m)
    errors = []
    if len(m) != 3 or len(m[0]) != 3:
        return ["M must be a 3x3 integer matrix"]
    coeffs = charpoly3(m)
    if coeffs[2] != -1:
        errors.append(f"M must lie in SL(3,Z) (det M = {-coeffs[2]})")
    if cubic_discriminant(*coeffs) >= 0:
        errors.append("M must have eigenvalues alpha>1, beta, conj(beta) with beta non-real "
                      "(characteristic polynomial discriminant is not negative)")
    elif cubic_eval(coeffs, 1) >= 0:
        errors.append("M must have its real eigenvalue alpha > 1")
    return errors


def real_root_isolated(m: IntMat, bits: int = 80) -> Fraction:
    """The real eigenvalue of a valid S0 matrix, bisected on exact rationals."""
    coeffs = charpoly3(as_mat(m))
    lo, hi = Fraction(1), Fraction(2)
    while cubic_eval(coeffs, hi) <= 0:
        hi *= 2
    for _ in range(bits):
        mid = (lo + hi) / 2
        if cubic_eval(coeffs, mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def s0_numeric_eigen(m: IntMat) -> tuple[float, complex, np.ndarray, np.ndarray]:
    """Floating ``(alpha, beta, a, b)`` for a valid S0 matrix, beta with Im > 0.

    Eigenvectors come from the cross product of two rows of M - lambda I.
    """
    m = as_mat(m)
    c2, c1, _ = charpoly3(m)
    alpha = float(real_root_isolated(m))
    # x^3 + c2 x^2 + c1 x + c0 = (x - alpha)(x^2 + u x + w)
    u = c2 + alpha
    w = c1 + alpha * u
    root = np.sqrt(complex(u * u - 4 * w))
    beta = (-u + root) / 2
    if beta.imag < 0:
        beta = beta.conjugate()
    arr = np.array(m, dtype=complex)

    def null_vector(lam):
        shifted = arr - lam * np.eye(3)
        best = None
        for i, j in ((0, 1), (0, 2), (1, 2)):
            v = np.cross(shifted[i], shifted[j])
            if best is None or np.linalg.norm(v) > np.linalg.norm(best):
                best = v
        return best / np.linalg.norm(best)

    a = null_vector(alpha).real
    lead = next(x for x in a if abs(x) > 1e-12)
    if lead < 0:
        a = -a
    b = null_vector(beta)
    return alpha, complex(beta), a, b
