"""GL(2,Z) conjugacy of hyperbolic matrices and the unit group of their commutant."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

from .forms import BinaryForm, represent_small
from .intmat import (IntMat, as_mat, charpoly2, det, flatten, identity, inverse_unimodular,
                     mat_add, mat_mul, mat_scale, max_norm, trace)
from .lattice import commutant_lattice

DEFAULT_CONJUGATOR_BOUND = 64


def _box(bound: int):
    """Integer pairs with max(|x|, |y|) <= bound, shell by shell.

    Inside a shell, pairs come by increasing |x| + |y|, positive coordinates first.
    """
    return iter(_box_points(bound))


@functools.lru_cache(maxsize=16)
def _box_points(bound: int) -> tuple[tuple[int, int], ...]:
    out = [(0, 0)]
    for k in range(1, bound + 1):
        shell = [(x, y) for x in (-k, k) for y in range(-k, k + 1)]
        shell += [(x, y) for y in (-k, k) for x in range(-k + 1, k)]
        shell.sort(key=lambda v: (abs(v[0]) + abs(v[1]), -v[0], -v[1]))
        out.extend(shell)
    return tuple(out)


def _combo(basis: Sequence[IntMat], x: int, y: int) -> IntMat:
    return mat_add(mat_scale(x, basis[0]), mat_scale(y, basis[1]))


def det_form(basis: Sequence[IntMat]) -> BinaryForm:
    """The binary form (x, y) -> det(xA + yB)."""
    a, b = basis
    da, db = det(a), det(b)
    return BinaryForm(da, det(mat_add(a, b)) - da - db, db)


def unimodular_in_lattice(basis: Sequence[IntMat], det_target: int,
                          bound: int = DEFAULT_CONJUGATOR_BOUND) -> IntMat | None:
    """Bounded search for K = xA + yB with det K = det_target and |x|, |y| <= bound.

    None means "not found within bound", not non-existence.
    """
    if det_target not in (1, -1):
        raise ValueError("det_target must be +1 or -1")
    if len(basis) == 0:
        return None
    if len(basis) == 1:
        for x in (1, -1):
            k = mat_scale(x, basis[0])
            if det(k) == det_target:
                return k
        return None
    if len(basis) != 2:
        raise ValueError("unimodular search expects a basis of rank <= 2")
    form = det_form(basis)
    for x, y in _box(bound):
        if form(x, y) == det_target:
            return _combo(basis, x, y)
    return None


def unimodular_in_lattice_exact(basis: Sequence[IntMat], det_target: int) -> tuple[IntMat | None, bool]:
    """Decide det(xA + yB) == det_target exactly by form reduction.

    Returns ``(K, certain)``. ``certain`` is False only when the determinant form
    is degenerate (square discriminant), where the reduction theory does not apply.
    """
    if len(basis) != 2:
        return None, len(basis) == 0
    form = det_form(basis)
    if form.content != 1:
        return None, True
    disc = form.discriminant
    if disc <= 4 or math.isqrt(disc) ** 2 == disc:
        return None, False
    sol = represent_small(form, det_target)
    if sol is None:
        return None, True
    return _combo(basis, *sol), True


@dataclass(frozen=True)
class ConjugatorResult:
    matrix: IntMat | None
    certain: bool
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.matrix is not None


def gl2z_conjugator(n: IntMat, n_prime: IntMat, det_sign: int | None = None,
                    bound: int = DEFAULT_CONJUGATOR_BOUND, exact: bool = True) -> ConjugatorResult:
    """Find K in GL(2,Z) with K n K^-1 == n_prime (and det K == det_sign if given).

    The bounded coefficient search runs first; with ``exact`` the indefinite
    form decision settles whatever the box did not.
    """
    n, n_prime = as_mat(n), as_mat(n_prime)
    if charpoly2(n) != charpoly2(n_prime):
        return ConjugatorResult(None, True, "characteristic polynomial")
    basis = commutant_lattice(n, n_prime)
    targets = (det_sign,) if det_sign is not None else (1, -1)
    if exact:
        # a certain "no" from form reduction makes the box search pointless
        decided = [unimodular_in_lattice_exact(basis, t) for t in targets]
        if all(k is None and sure for k, sure in decided):
            return ConjugatorResult(None, True, "no unimodular conjugator (form reduction)")
    for target in targets:
        k = unimodular_in_lattice(basis, target, bound)
        if k is not None:
            return ConjugatorResult(_verified(k, n, n_prime), True)
    if not exact:
        return ConjugatorResult(None, False, "search bound exhausted")
    certain = True
    for target in targets:
        k, sure = unimodular_in_lattice_exact(basis, target)
        if k is not None:
            return ConjugatorResult(_verified(k, n, n_prime), True)
        certain = certain and sure
    if certain:
        return ConjugatorResult(None, True, "no unimodular conjugator (form reduction)")
    return ConjugatorResult(None, False, "search bound exhausted")


def _verified(k: IntMat, n: IntMat, n_prime: IntMat) -> IntMat:
    if det(k) not in (1, -1) or mat_mul(k, n) != mat_mul(n_prime, k):
        raise ArithmeticError("conjugator failed exact verification")
    return k


def is_hyperbolic_irreducible(n: IntMat) -> bool:
    tr, d = charpoly2(n)
    disc = tr * tr - 4 * d
    return disc > 0 and math.isqrt(disc) ** 2 != disc


def centralizer_generator(n_prime: IntMat, bound: int = DEFAULT_CONJUGATOR_BOUND) -> IntMat:
    """A det-1 unit C != +-I commuting with n_prime, of minimal max-norm.

    Any minimal-norm choice generates the det-1 centralizer modulo -I, since
    powers of a hyperbolic unit strictly grow in norm. Results are memoized.
    """
    return _centralizer_generator(as_mat(n_prime), bound)


@functools.lru_cache(maxsize=4096)
def _centralizer_generator(n_prime: IntMat, bound: int) -> IntMat:
    if not is_hyperbolic_irreducible(n_prime):
        raise ValueError("centralizer_generator needs an irreducible characteristic polynomial")
    basis = commutant_lattice(n_prime, n_prime)
    form = det_form(basis)
    ident = identity(2)
    minus = mat_scale(-1, ident)
    found = [_combo(basis, x, y) for x, y in _box(bound) if form(x, y) == 1]
    # n' (or n'^2 when det n' = -1) is always a candidate, whatever the box holds
    found.append(n_prime if det(n_prime) == 1 else mat_mul(n_prime, n_prime))
    found = [c for c in found if c not in (ident, minus)]
    if not found:
        raise ValueError("no non-central unit within bound; raise the bound")
    return min(found, key=_unit_key)


def _unit_key(c: IntMat):
    return (max_norm(c), sum(1 for x in flatten(c) if x < 0), -trace(c), tuple(-x for x in flatten(c)))


def inverse(k: IntMat) -> IntMat:
    return inverse_unimodular(k)
