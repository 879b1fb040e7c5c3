"""Smith and Hermite normal forms, integer kernels and exact LLL reduction."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .intmat import IntMat, IntVec, identity


def _swap_rows(a: list[list[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_cols(a: list[list[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: list[list[int]], dst: int, src: int, k: int) -> None:
    if k:
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]


def _add_col(a: list[list[int]], dst: int, src: int, k: int) -> None:
    if k:
        for row in a:
            row[dst] += k * row[src]


def snf(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat]:
    """Smith normal form.

    Returns ``(S, U, V)`` with ``S == U * m * V``, ``U`` and ``V`` unimodular,
    ``S`` diagonal with non-negative entries and ``S[i][i] | S[i+1][i+1]``.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                        best = (abs(a[i][j]), i, j)
            if best is None:
                return _freeze(a), _freeze(u), _freeze(v)
            _, i, j = best
            _swap_rows(a, t, i)
            _swap_rows(u, t, i)
            _swap_cols(a, t, j)
            _swap_cols(v, t, j)

            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                _add_row(a, i, t, -q)
                _add_row(u, i, t, -q)
                clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                _add_col(a, j, t, -q)
                _add_col(v, j, t, -q)
                clean = clean and a[t][j] == 0
            if not clean:
                continue

            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % piv), None)
            if bad is not None:
                _add_row(a, t, bad, 1)
                _add_row(u, t, bad, 1)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return _freeze(a), _freeze(u), _freeze(v)


def _freeze(a: list[list[int]]) -> IntMat:
    return tuple(tuple(row) for row in a)


def hnf_rows(rows: Sequence[Sequence[int]]) -> tuple[IntVec, ...]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is upper triangular with positive pivots and entries above each
    pivot reduced into ``[0, pivot)``; zero rows are dropped.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return ()
    n = len(a[0])
    out: list[list[int]] = []
    for c in range(n):
        pool = [r for r in a if r[c] != 0]
        rest = [r for r in a if r[c] == 0]
        while len(pool) > 1:
            pool.sort(key=lambda r: abs(r[c]))
            head = pool[0]
            nxt = [head]
            for r in pool[1:]:
                q = r[c] // head[c]
                r = [x - q * y for x, y in zip(r, head)]
                if r[c] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            pool = nxt
        if pool:
            piv = pool[0]
            if piv[c] < 0:
                piv = [-x for x in piv]
            for prev in out:
                q = prev[c] // piv[c]
                prev[:] = [x - q * y for x, y in zip(prev, piv)]
            out.append(piv)
        a = rest
    return tuple(tuple(r) for r in out)


def integer_kernel(m: Sequence[Sequence[int]]) -> list[IntVec]:
    """A Z-basis of ``{x in Z^n : m x = 0}``, LLL-reduced."""
    s, _, v = snf(m)
    cols = len(v)
    rank = sum(1 for i in range(min(len(s), cols)) if s[i][i] != 0)
    basis = [tuple(v[r][j] for r in range(cols)) for j in range(rank, cols)]
    return lll(basis) if basis else []


def lll(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[IntVec]:
    """Exact LLL reduction of linearly independent integer vectors."""
    b = [list(map(int, v)) for v in basis]
    k = len(b)
    if k == 0:
        return []

    def dot(x, y):
        return sum(p * q for p, q in zip(x, y))

    def gram_schmidt():
        bstar: list[list[Fraction]] = []
        mu = [[Fraction(0)] * k for _ in range(k)]
        norms: list[Fraction] = []
        for i in range(k):
            w = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / norms[j]
                w = [x - mu[i][j] * y for x, y in zip(w, bstar[j])]
            bstar.append(w)
            norms.append(dot(w, w))
        return mu, norms

    mu, norms = gram_schmidt()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                mu, norms = gram_schmidt()
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, norms = gram_schmidt()
            i = max(i - 1, 1)
    return [tuple(v) for v in b]
