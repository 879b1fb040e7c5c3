"""The Heisenberg-type group Gamma_r = Z^2 x Z[r/2] and its endomorphisms.

Half-integers are stored doubled: an element (zeta, y) keeps ``y2 = 2*y`` and an
endomorphism (K, v) keeps ``v2 = 2*v``, so everything stays in plain ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg.intmat import IntMat, as_mat, det, identity, inverse_unimodular, mat_mul


def _det2(z1: tuple[int, int], z2: tuple[int, int]) -> int:
    return z1[0] * z2[1] - z1[1] * z2[0]


@dataclass(frozen=True)
class GammaRElem:
    zeta: tuple[int, int]
    y2: int
    r: int

    def __post_init__(self) -> None:
        if self.r == 0:
            raise ValueError("Gamma_r needs r != 0")
        if self.r % 2 == 0 and self.y2 % 2:
            raise ValueError("for even r the central coordinate must be an integer")

    @property
    def y(self) -> Fraction:
        return Fraction(self.y2, 2)

    @classmethod
    def identity(cls, r: int) -> GammaRElem:
        return cls((0, 0), 0, r)

    def is_identity(self) -> bool:
        return self.zeta == (0, 0) and self.y2 == 0

    def __mul__(self, other: GammaRElem) -> GammaRElem:
        return gr_mul(self, other)

    def __repr__(self) -> str:
        return f"GammaRElem({self.zeta}, y={self.y}, r={self.r})"


def gr_mul(g: GammaRElem, h: GammaRElem) -> GammaRElem:
    """(z, y)(z', y') = (z + z', y + y' + (r/2) det(z, z'))."""
    if g.r != h.r:
        raise ValueError(f"cannot multiply elements of Gamma_{g.r} and Gamma_{h.r}")
    zeta = (g.zeta[0] + h.zeta[0], g.zeta[1] + h.zeta[1])
    return GammaRElem(zeta, g.y2 + h.y2 + g.r * _det2(g.zeta, h.zeta), g.r)


def gr_inv(g: GammaRElem) -> GammaRElem:
    # det(z, -z) = 0, so the inverse is plain negation
    return GammaRElem((-g.zeta[0], -g.zeta[1]), -g.y2, g.r)


def gr_pow(g: GammaRElem, k: int) -> GammaRElem:
    if k < 0:
        g, k = gr_inv(g), -k
    out = GammaRElem.identity(g.r)
    base = g
    while k:
        if k & 1:
            out = gr_mul(out, base)
        base = gr_mul(base, base)
        k >>= 1
    return out


def mu_embed(l1: int, l2: int, l3: int, r: int) -> GammaRElem:
    """Image of g1^l1 g2^l2 g3^l3: ((l1, l2), l3 + l1*l2*r/2)."""
    return GammaRElem((l1, l2), 2 * l3 + l1 * l2 * r, r)


def mu_image_test(g: GammaRElem) -> bool:
    """True iff y - (r/2) z1 z2 is an integer, i.e. g lies in the image of mu."""
    return (g.y2 - g.r * g.zeta[0] * g.zeta[1]) % 2 == 0


def mu_preimage(g: GammaRElem) -> tuple[int, int, int]:
    """Exponents (l1, l2, l3) with mu(l1, l2, l3) == g."""
    if not mu_image_test(g):
        raise ValueError(f"{g} is not in the image of mu")
    l1, l2 = g.zeta
    return l1, l2, (g.y2 - g.r * l1 * l2) // 2


@dataclass(frozen=True)
class GammaREnd:
    """Endomorphism (z, y) -> (z K, z.v + det(K) y) with v stored doubled."""

    K: IntMat
    v2: tuple[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "K", as_mat(self.K))
        object.__setattr__(self, "v2", (int(self.v2[0]), int(self.v2[1])))

    @property
    def v(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.v2[0], 2), Fraction(self.v2[1], 2)

    @classmethod
    def identity(cls) -> GammaREnd:
        return cls(identity(2), (0, 0))

    def __call__(self, g: GammaRElem) -> GammaRElem:
        return end_apply(self, g)


def end_apply(phi: GammaREnd, g: GammaRElem) -> GammaRElem:
    z1, z2 = g.zeta
    k = phi.K
    zeta = (z1 * k[0][0] + z2 * k[1][0], z1 * k[0][1] + z2 * k[1][1])
    y2 = z1 * phi.v2[0] + z2 * phi.v2[1] + det(k) * g.y2
    return GammaRElem(zeta, y2, g.r)


def semigroup_mul(x: GammaREnd, y: GammaREnd) -> GammaREnd:
    """(K1, v1)(K2, v2) = (K1 K2, K1 v2 + det(K2) v1)."""
    k1, k2 = x.K, y.K
    d2 = det(k2)
    v = tuple(k1[i][0] * y.v2[0] + k1[i][1] * y.v2[1] + d2 * x.v2[i] for i in range(2))
    return GammaREnd(mat_mul(k1, k2), v)


def end_compose(phi: GammaREnd, psi: GammaREnd) -> GammaREnd:
    """The endomorphism g -> phi(psi(g)).

    The identification with pairs is an anti-isomorphism, so this is the pair
    product psi * phi.
    """
    return semigroup_mul(psi, phi)


def end_inverse(phi: GammaREnd) -> GammaREnd:
    """Inverse of an automorphism: (K^-1, -det(K^-1) K^-1 v)."""
    kinv = inverse_unimodular(phi.K)
    d = det(kinv)
    v = tuple(-d * (kinv[i][0] * phi.v2[0] + kinv[i][1] * phi.v2[1]) for i in range(2))
    out = GammaREnd(kinv, v)
    if end_compose(out, phi) != GammaREnd.identity():
        raise ArithmeticError("inverse endomorphism failed to compose to the identity")
    return out


def end_pow(phi: GammaREnd, k: int) -> GammaREnd:
    if k < 0:
        phi, k = end_inverse(phi), -k
    out = GammaREnd.identity()
    base = phi
    while k:
        if k & 1:
            out = end_compose(out, base)
        base = end_compose(base, base)
        k >>= 1
    return out


def lift_hom(k11: int, k12: int, k13: int, k21: int, k22: int, k23: int, r: int) -> GammaREnd:
    """Lift of g'_i -> g1^{k_i1} g2^{k_i2} g3^{k_i3} (i = 1, 2) to an endomorphism of Gamma_r."""
    return GammaREnd(((k11, k12), (k21, k22)), (2 * k13 + r * k11 * k12, 2 * k23 + r * k21 * k22))


def lift_integrality(phi: GammaREnd, r: int) -> bool:
    """v_i - (r/2) k_i1 k_i2 in Z for both rows: the lift comes from the mu-images."""
    k = phi.K
    return all((phi.v2[i] - r * k[i][0] * k[i][1]) % 2 == 0 for i in range(2))


def shifted_offsets(n: IntMat, p: int, q: int, r: int) -> tuple[int, int]:
    """Doubled (p + (r/2) n11 n12, q + (r/2) n21 n22)."""
    return 2 * p + r * n[0][0] * n[0][1], 2 * q + r * n[1][0] * n[1][1]


def conjugation_lift(n: IntMat, p: int, q: int, r: int) -> GammaREnd:
    """The endomorphism induced by gamma -> g0 gamma g0^-1."""
    return GammaREnd(as_mat(n), shifted_offsets(as_mat(n), p, q, r))
