"""Indefinite binary quadratic forms: Gauss reduction, cycles, small representations.

Used to decide exactly whether det(xA + yB) = +-1 has an integer solution when
the bounded search comes back empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Transform = tuple[tuple[int, int], tuple[int, int]]
_IDENTITY: Transform = ((1, 0), (0, 1))


@dataclass(frozen=True)
class BinaryForm:
    a: int
    b: int
    c: int

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(self.a, self.b, self.c)

    def is_reduced(self) -> bool:
        s = math.isqrt(self.discriminant)
        two_a = 2 * abs(self.a)
        return 1 <= self.b <= s and two_a + self.b > s and two_a - self.b <= s


def _rho(f: BinaryForm, s: int) -> tuple[BinaryForm, Transform]:
    """One reduction step (a, b, c) -> (c, b', a') with b' normalized against sqrt(disc)."""
    a, b, c = f.a, f.b, f.c
    ac = abs(c)
    if ac > s:
        bp = (-b) % (2 * ac)
        if bp > ac:
            bp -= 2 * ac
    else:
        bp = s - (s + b) % (2 * ac)
    t = (bp + b) // (2 * c)
    assert 2 * c * t == bp + b
    new = BinaryForm(c, bp, a - b * t + c * t * t)
    return new, ((0, -1), (1, t))


def _compose(t1: Transform, t2: Transform) -> Transform:
    return (
        (t1[0][0] * t2[0][0] + t1[0][1] * t2[1][0], t1[0][0] * t2[0][1] + t1[0][1] * t2[1][1]),
        (t1[1][0] * t2[0][0] + t1[1][1] * t2[1][0], t1[1][0] * t2[0][1] + t1[1][1] * t2[1][1]),
    )


def _check_indefinite(f: BinaryForm) -> int:
    disc = f.discriminant
    if disc <= 0 or math.isqrt(disc) ** 2 == disc:
        raise ValueError(f"form {f} is not indefinite with non-square discriminant")
    return math.isqrt(disc)


def reduce_form(f: BinaryForm) -> tuple[BinaryForm, Transform, list[tuple[BinaryForm, Transform]]]:
    """Reduce ``f``; returns the reduced form, the transform T with reduced = f o T,
    and every intermediate (form, transform) visited on the way."""
    s = _check_indefinite(f)
    g, t = f, _IDENTITY
    path = [(g, t)]
    while not g.is_reduced():
        g, step = _rho(g, s)
        t = _compose(t, step)
        path.append((g, t))
    return g, t, path


def cycle(f: BinaryForm) -> list[tuple[BinaryForm, Transform]]:
    """The cycle of reduced forms properly equivalent to ``f``, with transforms from ``f``."""
    s = _check_indefinite(f)
    g0, t, _ = reduce_form(f)
    out = [(g0, t)]
    g = g0
    while True:
        g, step = _rho(g, s)
        t = _compose(t, step)
        if g == g0:
            return out
        out.append((g, t))


def represent_small(f: BinaryForm, m: int) -> tuple[int, int] | None:
    """A primitive solution of f(x, y) == m for 0 < |m| < sqrt(disc)/2, or None if none exists.

    Any primitive representation of such an m makes (m, b, c) a reduced form
    properly equivalent to f, so m shows up as a leading coefficient on the
    cycle; absence on the cycle is therefore a proof of non-representability.
    """
    disc = f.discriminant
    if m == 0 or 4 * m * m >= disc:
        raise ValueError("represent_small needs 0 < |m| < sqrt(disc)/2")
    _, _, path = reduce_form(f)
    for g, t in path + cycle(f):
        if g.a == m:
            x, y = t[0][0], t[1][0]
            assert f(x, y) == m
            return x, y
    return None
