"""Integer lattices: Hermite-reduced bases, membership with coefficients, commutants."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

from .intmat import IntMat, IntVec, as_mat, det, identity, mat_sub, mat_scale
from .normal_forms import hnf_rows, integer_kernel, lll, snf


@dataclass(frozen=True)
class LatticeBasis:
    """Sublattice of Z^n spanned by ``generators``.

    ``hnf`` is the row-style Hermite basis and is what membership and coset
    reduction run against; the generators are kept so membership can report
    coefficients in terms of them.
    """

    generators: tuple[IntVec, ...]
    dim: int
    hnf: tuple[IntVec, ...] = field(init=False)

    def __post_init__(self) -> None:
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if any(len(g) != self.dim for g in gens):
            raise ValueError("generator dimension mismatch")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "hnf", hnf_rows(gens))

    @classmethod
    def from_columns(cls, *blocks: IntMat) -> LatticeBasis:
        """Lattice spanned by the columns of the horizontally stacked blocks."""
        dim = len(blocks[0])
        gens = [tuple(b[i][j] for i in range(dim)) for b in blocks for j in range(len(b[0]))]
        return cls(tuple(gens), dim)

    @property
    def rank(self) -> int:
        return len(self.hnf)

    def index(self) -> int:
        """Index in Z^n; only defined for full-rank lattices."""
        if self.rank != self.dim:
            raise ValueError("index of a lattice that is not full rank")
        out = 1
        for i, row in enumerate(self.hnf):
            out *= row[i]
        return out

    def reduce(self, v: Sequence[int]) -> IntVec:
        """Canonical representative of ``v`` modulo the lattice (pivot coordinates in [0, pivot))."""
        w = list(map(int, v))
        for row in self.hnf:
            c = next(i for i, x in enumerate(row) if x)
            q = w[c] // row[c]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return tuple(w)

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def same_lattice(self, other: LatticeBasis) -> bool:
        return self.dim == other.dim and self.hnf == other.hnf


def lattice_membership(v: Sequence[int], basis: LatticeBasis) -> IntVec | None:
    """Integer coefficients ``x`` with ``sum(x[i] * generators[i]) == v``, or None.

    Solved through the Smith form of the generator matrix, then checked exactly.
    """
    v = tuple(int(x) for x in v)
    if len(v) != basis.dim:
        raise ValueError("vector dimension mismatch")
    k = len(basis.generators)
    if k == 0:
        return () if not any(v) else None
    g = tuple(tuple(basis.generators[j][i] for j in range(k)) for i in range(basis.dim))
    s, u, vv = snf(g)
    uv = [sum(u[i][j] * v[j] for j in range(basis.dim)) for i in range(basis.dim)]
    y = [0] * k
    for i in range(basis.dim):
        d = s[i][i] if i < k else 0
        if d == 0:
            if uv[i] != 0:
                return None
        else:
            if uv[i] % d:
                return None
            y[i] = uv[i] // d
    x = tuple(sum(vv[i][j] * y[j] for j in range(k)) for i in range(k))
    check = tuple(sum(x[j] * basis.generators[j][i] for j in range(k)) for i in range(basis.dim))
    if check != v:
        raise ArithmeticError("lattice membership coefficients failed verification")
    return x


def congruence_lattice(r: int, shift: IntMat) -> LatticeBasis:
    """The lattice r Z^2 + shift Z^2, generators ordered as the columns of [r I | shift]."""
    if r == 0:
        raise ValueError("degenerate lattice: r must be nonzero")
    return LatticeBasis.from_columns(mat_scale(r, identity(2)), shift)


def shifted(n: IntMat, sign: int) -> IntMat:
    """``n + sign * I``."""
    return mat_sub(n, mat_scale(-sign, identity(len(n))))


def commutant_lattice(n: IntMat, n_prime: IntMat) -> list[IntMat]:
    """Reduced Z-basis of ``{K integral : K n == n_prime K}``.

    Solved as the integer kernel of the linear map K -> K n - n_prime K on the
    flattened entries of K. Results are memoized.
    """
    return list(_commutant_lattice(as_mat(n), as_mat(n_prime)))


@functools.lru_cache(maxsize=8192)
def _commutant_lattice(n: IntMat, n_prime: IntMat) -> tuple[IntMat, ...]:
    size = len(n)
    rows = []
    for i in range(size):
        for j in range(size):
            row = [0] * (size * size)
            # (K n)_{ij} = sum_l K_{il} n_{lj};  (n' K)_{ij} = sum_l n'_{il} K_{lj}
            for l in range(size):
                row[i * size + l] += n[l][j]
                row[l * size + j] -= n_prime[i][l]
            rows.append(row)
    kernel = integer_kernel(rows)
    return tuple(tuple(tuple(vec[i * size:(i + 1) * size]) for i in range(size)) for vec in kernel)


def reduce_matrix_basis(mats: Sequence[IntMat]) -> list[IntMat]:
    if not mats:
        return []
    size = len(mats[0])
    flat = lll([tuple(x for row in m for x in row) for m in mats])
    return [tuple(tuple(v[i * size:(i + 1) * size]) for i in range(size)) for v in flat]


def is_unimodular(m: IntMat) -> bool:
    return det(m) in (1, -1)
