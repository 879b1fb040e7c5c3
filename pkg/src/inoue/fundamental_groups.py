"""Normal-form arithmetic in the fundamental groups G_M, G+_{N,p,q,r}, G-_{N,p,q,r}.

An element g0^n0 * gamma is stored as ``GroupElem(n0, gamma)``. For S+ and S-,
gamma is the mu-image in Gamma_r; for S0 it is the lattice vector in Z^3 (row),
so that gamma = g1^l1 g2^l2 g3^l3 in both cases.

Products follow (m, a)(m', b) = (m + m', A^{-m'}(a) b) where A is conjugation
by g0, so that g0 a g0^-1 = A(a).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Sequence, Union

from .exact_linalg.intmat import IntMat, as_mat, det, mat_mul, mat_pow
from .exact_linalg.lattice import shifted
from .gamma_r import (GammaREnd, GammaRElem, conjugation_lift, end_apply,
                      end_inverse, end_pow, gr_inv, gr_mul, lift_integrality, mu_embed,
                      mu_image_test, shifted_offsets)

KINDS = ("S0", "S+", "S-")


class CenterClass(str, enum.Enum):
    TRIVIAL = "Trivial"
    INFINITE_CYCLIC = "InfiniteCyclic"


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str
    matrix: IntMat
    p: int | None = None
    q: int | None = None
    r: int | None = None
    conj_lift: GammaREnd | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "matrix", as_mat(self.matrix))
        if self.kind == "S0":
            if len(self.matrix) != 3 or det(self.matrix) != 1:
                raise ValueError("G_M needs M in SL(3,Z)")
            return
        if self.r in (None, 0):
            raise ValueError("r must be a nonzero integer")
        if len(self.matrix) != 2 or det(self.matrix) != (1 if self.kind == "S+" else -1):
            raise ValueError(f"{self.kind} needs a 2x2 matrix of det {1 if self.kind == 'S+' else -1}")
        if self.conj_lift is None:
            object.__setattr__(self, "conj_lift",
                               conjugation_lift(self.matrix, self.p, self.q, self.r))

    @property
    def rank_offsets(self) -> tuple[int, int]:
        return self.p, self.q


Gamma = Union[GammaRElem, tuple[int, int, int]]


@dataclass(frozen=True)
class GroupElem:
    n0: int
    gamma: Gamma

    def __repr__(self) -> str:
        return f"GroupElem(n0={self.n0}, gamma={self.gamma})"


# -- the Gamma part -----------------------------------------------------------

def _gamma_identity(g: GroupDescriptor) -> Gamma:
    return (0, 0, 0) if g.kind == "S0" else GammaRElem.identity(g.r)


def _gamma_mul(g: GroupDescriptor, a: Gamma, b: Gamma) -> Gamma:
    if g.kind == "S0":
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2])
    return gr_mul(a, b)


def _gamma_inv(g: GroupDescriptor, a: Gamma) -> Gamma:
    if g.kind == "S0":
        return (-a[0], -a[1], -a[2])
    return gr_inv(a)


def _conj_power(g: GroupDescriptor, k: int, a: Gamma) -> Gamma:
    """A^k(a), where A(a) = g0 a g0^-1."""
    if k == 0:
        return a
    if g.kind == "S0":
        # g0 g_i g0^-1 = prod_j g_j^{m_ij}: the lattice row vector goes to lam M
        mk = mat_pow(g.matrix, k)
        return tuple(sum(a[i] * mk[i][j] for i in range(3)) for j in range(3))
    return end_apply(end_pow(g.conj_lift, k), a)


def _check_member(g: GroupDescriptor, a: GroupElem) -> None:
    if g.kind == "S0":
        if isinstance(a.gamma, GammaRElem) or len(a.gamma) != 3:
            raise ValueError("G_M elements carry a Z^3 lattice part")
        return
    if not isinstance(a.gamma, GammaRElem) or a.gamma.r != g.r:
        raise ValueError("element does not belong to this group (mixed descriptors)")
    if not mu_image_test(a.gamma):
        raise ValueError("gamma part is outside the image of mu")


# -- group operations ---------------------------------------------------------

def identity_elem(g: GroupDescriptor) -> GroupElem:
    return GroupElem(0, _gamma_identity(g))


def g_mul(a: GroupElem, b: GroupElem, g: GroupDescriptor) -> GroupElem:
    _check_member(g, a)
    _check_member(g, b)
    moved = _conj_power(g, -b.n0, a.gamma)
    return GroupElem(a.n0 + b.n0, _gamma_mul(g, moved, b.gamma))


def g_inv(a: GroupElem, g: GroupDescriptor) -> GroupElem:
    # (m, x)^-1 = (-m, A^{m}(x)^-1)
    _check_member(g, a)
    return GroupElem(-a.n0, _gamma_inv(g, _conj_power(g, a.n0, a.gamma)))


def g_pow(a: GroupElem, k: int, g: GroupDescriptor) -> GroupElem:
    if k < 0:
        a, k = g_inv(a, g), -k
    out = identity_elem(g)
    base = a
    while k:
        if k & 1:
            out = g_mul(out, base, g)
        base = g_mul(base, base, g)
        k >>= 1
    return out


def generator(i: int, g: GroupDescriptor) -> GroupElem:
    if i == 0:
        return GroupElem(1, _gamma_identity(g))
    if i not in (1, 2, 3):
        raise ValueError(f"generator index must be 0..3, got {i}")
    exps = [0, 0, 0]
    exps[i - 1] = 1
    if g.kind == "S0":
        return GroupElem(0, tuple(exps))
    return GroupElem(0, mu_embed(*exps, g.r))


def gamma_elem(l1: int, l2: int, l3: int, g: GroupDescriptor) -> GroupElem:
    """The element g1^l1 g2^l2 g3^l3."""
    if g.kind == "S0":
        return GroupElem(0, (l1, l2, l3))
    return GroupElem(0, mu_embed(l1, l2, l3, g.r))


Word = Sequence[tuple[int, int]]


def word_to_normal_form(word: Word, g: GroupDescriptor) -> GroupElem:
    """Collect a word [(generator index, exponent), ...] into normal form."""
    out = identity_elem(g)
    for idx, e in word:
        out = g_mul(out, g_pow(generator(idx, g), e, g), g)
    return out


def commutes(a: GroupElem, b: GroupElem, g: GroupDescriptor) -> bool:
    return g_mul(a, b, g) == g_mul(b, a, g)


# -- relations ----------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    lhs: tuple[tuple[int, int], ...]
    rhs: tuple[tuple[int, int], ...]


def defining_relations(g: GroupDescriptor) -> list[Relation]:
    m = g.matrix
    if g.kind == "S0":
        rels = [Relation(f"g0 g{i} g0^-1 = prod g_j^m{i}j",
                         ((0, 1), (i, 1), (0, -1)),
                         tuple((j + 1, m[i - 1][j]) for j in range(3)))
                for i in (1, 2, 3)]
        rels += [Relation(f"g{i} g{j} = g{j} g{i}", ((i, 1), (j, 1)), ((j, 1), (i, 1)))
                 for i, j in ((1, 2), (1, 3), (2, 3))]
        return rels
    rels = [
        Relation("g0 g1 g0^-1 = g1^n11 g2^n12 g3^p", ((0, 1), (1, 1), (0, -1)),
                 ((1, m[0][0]), (2, m[0][1]), (3, g.p))),
        Relation("g0 g2 g0^-1 = g1^n21 g2^n22 g3^q", ((0, 1), (2, 1), (0, -1)),
                 ((1, m[1][0]), (2, m[1][1]), (3, g.q))),
        Relation("g1 g2 g1^-1 g2^-1 = g3^r", ((1, 1), (2, 1), (1, -1), (2, -1)), ((3, g.r),)),
    ]
    if g.kind == "S+":
        rels += [Relation(f"g{i} g3 = g3 g{i}", ((i, 1), (3, 1)), ((3, 1), (i, 1)))
                 for i in (0, 1, 2, 3)]
    else:
        rels.append(Relation("g0 g3 g0^-1 = g3^-1", ((0, 1), (3, 1), (0, -1)), ((3, -1),)))
        rels += [Relation(f"g{i} g3 = g3 g{i}", ((i, 1), (3, 1)), ((3, 1), (i, 1))) for i in (1, 2)]
    return rels


def relation_check(g: GroupDescriptor) -> list[dict]:
    """Evaluate every defining relation in normal form; one entry per relation."""
    report = []
    for rel in defining_relations(g):
        lhs = word_to_normal_form(rel.lhs, g)
        rhs = word_to_normal_form(rel.rhs, g)
        report.append({"relation": rel.name, "passed": lhs == rhs})
    return report


# -- invariants ---------------------------------------------------------------

def fingerprint(g: GroupDescriptor) -> tuple[CenterClass, bool]:
    """(center class, whether Gamma is abelian), tested on the candidate elements.

    The center candidates are g3 (S+/S-) and the lattice generators (S0); a
    candidate is central when it commutes with every generator.
    """
    gens = [generator(i, g) for i in range(4)]
    candidates = [gens[3]] if g.kind != "S0" else gens[1:]
    central = any(all(commutes(c, x, g) for x in gens) for c in candidates)
    gamma_abelian = commutes(gens[1], gens[2], g)
    return (CenterClass.INFINITE_CYCLIC if central else CenterClass.TRIVIAL), gamma_abelian


# -- isomorphisms between S+/S- groups ----------------------------------------

class IsomorphismConditionError(ValueError):
    """Data (K, v, l1, l2) violates one of the conditions for extending to an isomorphism."""


@dataclass(frozen=True)
class GroupIsomorphism:
    """rho: G' -> G, g0'^l0 gamma -> (g0 g1^l1 g2^l2)^l0 phi(gamma)."""

    source: GroupDescriptor
    target: GroupDescriptor
    lift: GammaREnd
    l1: int
    l2: int

    def image_of_g0(self) -> GroupElem:
        return g_mul(generator(0, self.target), gamma_elem(self.l1, self.l2, 0, self.target),
                     self.target)

    def __call__(self, a: GroupElem) -> GroupElem:
        _check_member(self.source, a)
        head = g_pow(self.image_of_g0(), a.n0, self.target)
        tail = GroupElem(0, end_apply(self.lift, a.gamma))
        return g_mul(head, tail, self.target)

    def inverse(self, b: GroupElem) -> GroupElem:
        _check_member(self.target, b)
        head = g_pow(self.image_of_g0(), -b.n0, self.target)
        rest = g_mul(head, b, self.target)
        assert rest.n0 == 0
        return GroupElem(b.n0, end_apply(end_inverse(self.lift), rest.gamma))


def isomorphism_conditions(K: IntMat, v2: tuple[int, int], l1: int, l2: int,
                           source: GroupDescriptor, target: GroupDescriptor) -> list[str]:
    """Violated conditions (empty when rho extends to an isomorphism source -> target).

    With N the target matrix and N' the source matrix: K N = N' K,
    (N' -+ I) v = K p~ - det(K) p~' +- K r (-l2, l1), and v_i - (r/2) k_i1 k_i2 in Z.
    """
    errors = []
    if source.kind != target.kind or source.kind == "S0":
        return ["isomorphism data only defined between two S+ or two S- groups"]
    if source.r != target.r:
        return ["the shared Gamma_r needs r = r'"]
    K = as_mat(K)
    n, n_prime, r = target.matrix, source.matrix, target.r
    if det(K) not in (1, -1):
        errors.append("K must lie in GL(2,Z)")
    if mat_mul(K, n) != mat_mul(n_prime, K):
        errors.append("K N = N' K")
    sgn = 1 if target.kind == "S+" else -1
    shift = shifted(n_prime, -sgn)
    lhs = tuple(shift[i][0] * v2[0] + shift[i][1] * v2[1] for i in range(2))
    pt = shifted_offsets(n, target.p, target.q, r)
    ptp = shifted_offsets(n_prime, source.p, source.q, r)
    perp = (-l2, l1)
    dk = det(K)
    rhs = tuple(K[i][0] * pt[0] + K[i][1] * pt[1] - dk * ptp[i]
                + sgn * 2 * r * (K[i][0] * perp[0] + K[i][1] * perp[1]) for i in range(2))
    if lhs != rhs:
        name = "(N' - I) v = K p - det(K) p' + K r (-l2, l1)" if sgn > 0 else \
            "(N' + I) v = K p - det(K) p' - K r (-l2, l1)"
        errors.append(name)
    if not lift_integrality(GammaREnd(K, v2), r):
        errors.append("v_i - (r/2) k_i1 k_i2 in Z")
    return errors


def extend_isomorphism(K: IntMat, v2: tuple[int, int], l1: int, l2: int,
                       source: GroupDescriptor, target: GroupDescriptor) -> GroupIsomorphism:
    """Build rho: source -> target from lift data, after checking the conditions exactly.

    ``v2`` is the doubled offset vector of the lift (K, v).
    """
    errors = isomorphism_conditions(K, v2, l1, l2, source, target)
    if errors:
        raise IsomorphismConditionError("; ".join(errors))
    return GroupIsomorphism(source, target, GammaREnd(as_mat(K), tuple(v2)), l1, l2)


def perturbed(g: GroupDescriptor, dv2: tuple[int, int]) -> GroupDescriptor:
    """Copy of ``g`` with the conjugation lift offsets shifted (doubled units)."""
    lift = g.conj_lift
    return replace(g, conj_lift=GammaREnd(lift.K, (lift.v2[0] + dv2[0], lift.v2[1] + dv2[1])))
