"""Small exact helpers for integer matrices stored as tuples of tuples."""

from __future__ import annotations

from typing import Iterable, Sequence

IntMat = tuple[tuple[int, ...], ...]
IntVec = tuple[int, ...]


def as_mat(rows: Iterable[Iterable[int]]) -> IntMat:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(row) for row in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(m: IntMat) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, k: int | None = None) -> IntMat:
    k = n if k is None else k
    return tuple((0,) * k for _ in range(n))


def transpose(m: IntMat) -> IntMat:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    """Matrix product; works for any entry type supporting + and *."""
    if len(a[0]) != len(b):
        raise ValueError("shape mismatch in product")
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in cols)
                 for row in a)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), 0 * v[0]) for row in m)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    return tuple(sum((v[i] * m[i][j] for i in range(len(v))), 0 * v[0]) for j in range(len(m[0])))


def mat_add(a: IntMat, b: IntMat) -> IntMat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: IntMat, b: IntMat) -> IntMat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(k: int, a: IntMat) -> IntMat:
    return tuple(tuple(k * x for x in row) for row in a)


def det(m: Sequence[Sequence]):
    """Exact determinant by cofactor expansion (sizes up to 4 are all we use)."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det(minor)
    return total


def trace(m: IntMat) -> int:
    return sum(m[i][i] for i in range(len(m)))


def inverse_unimodular(m: IntMat) -> IntMat:
    """Inverse of a 2x2 or 3x3 integer matrix with determinant +-1."""
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {d})")
    n = len(m)
    if n == 2:
        (a, b), (c, e) = m
        return ((d * e, -d * b), (-d * c, d * a))
    if n == 3:
        cof = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                minor = [[m[r][s] for s in range(3) if s != j] for r in range(3) if r != i]
                cof[i][j] = (-1) ** (i + j) * det(minor)
        # adjugate / det, and 1/d == d for d = +-1
        return tuple(tuple(d * cof[j][i] for j in range(3)) for i in range(3))
    raise ValueError("only 2x2 and 3x3 inverses are supported")


def mat_pow(m: IntMat, k: int) -> IntMat:
    if k < 0:
        m, k = inverse_unimodular(m), -k
    result = identity(len(m))
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def max_norm(m: IntMat) -> int:
    return max((abs(x) for row in m for x in row), default=0)


def flatten(m: IntMat) -> IntVec:
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence[int], rows: int, cols: int) -> IntMat:
    return tuple(tuple(v[i * cols:(i + 1) * cols]) for i in range(rows))


def charpoly2(m: IntMat) -> tuple[int, int]:
    """(trace, det): the characteristic polynomial is x^2 - tr x + det."""
    return trace(m), det(m)


def charpoly3(m: IntMat) -> tuple[int, int, int]:
    """Coefficients (c2, c1, c0) of x^3 + c2 x^2 + c1 x + c0."""
    tr = trace(m)
    minors = sum(m[i][i] * m[j][j] - m[i][j] * m[j][i] for i in range(3) for j in range(i + 1, 3))
    return -tr, minors, -det(m)
