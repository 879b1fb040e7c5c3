"""Exact arithmetic in a real quadratic field Q(sqrt(D))."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction]


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` square-free."""
    k, m, f = 1, n, 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


@total_ordering
class QuadExt:
    """The number ``q + s*sqrt(D)`` with rational ``q, s`` and ``D > 0`` not a square.

    ``D`` is carried exactly as given (not reduced to its square-free part);
    two elements can only be combined when their ``D`` agree.
    """

    __slots__ = ("q", "s", "D")

    def __init__(self, q: Scalar = 0, s: Scalar = 0, D: int = 5) -> None:
        if D <= 0 or math.isqrt(D) ** 2 == D:
            raise ValueError(f"D must be a positive non-square, got {D}")
        self.q = Fraction(q)
        self.s = Fraction(s)
        self.D = int(D)

    @classmethod
    def sqrt(cls, D: int) -> QuadExt:
        return cls(0, 1, D)

    def _coerce(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise ValueError(f"mixing Q(sqrt({self.D})) with Q(sqrt({other.D}))")
            return other
        if isinstance(other, (int, Rational)):
            return QuadExt(other, 0, self.D)
        return None

    def __repr__(self) -> str:
        return f"QuadExt({self.q}, {self.s}, D={self.D})"

    def __str__(self) -> str:
        if self.s == 0:
            return str(self.q)
        k, m = squarefree_part(self.D)
        coeff = abs(self.s) * k
        root = f"√{m}"
        s = "" if coeff == 1 else f"{coeff}*"
        if self.q == 0:
            return f"{'-' if self.s < 0 else ''}{s}{root}"
        return f"{self.q} {'-' if self.s < 0 else '+'} {s}{root}"

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.q + o.q, self.s + o.s, self.D)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.q, -self.s, self.D)

    def __pos__(self) -> QuadExt:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.q - o.q, self.s - o.s, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.q * o.q + self.s * o.s * self.D, self.q * o.s + self.s * o.q, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.q, -self.s, self.D)

    def norm(self) -> Fraction:
        return self.q * self.q - self.s * self.s * self.D

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadExt(self.q / n, -self.s / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> QuadExt:
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadExt(1, 0, self.D)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        """Exact sign of the real embedding with sqrt(D) > 0."""
        sq = (self.q > 0) - (self.q < 0)
        ss = (self.s > 0) - (self.s < 0)
        if ss == 0 or sq == ss:
            return sq or ss
        if sq == 0:
            return ss
        lhs, rhs = self.q * self.q, self.s * self.s * self.D
        return sq if lhs > rhs else ss

    def is_rational(self) -> bool:
        return self.s == 0

    def __bool__(self) -> bool:
        return self.q != 0 or self.s != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt) and other.D != self.D:
            return False
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.q == o.q and self.s == o.s

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self.s == 0:
            return hash(self.q)
        return hash((self.q, self.s, self.D))

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        # q - s*sqrt(D) cancels catastrophically when the two terms have
        # opposite signs; rationalize in that case.
        if self.s == 0:
            return float(self.q)
        root = math.sqrt(self.D)
        if self.q == 0 or (self.q > 0) == (self.s > 0):
            return float(self.q) + float(self.s) * root
        return float(self.norm()) / (float(self.q) - float(self.s) * root)

    def __complex__(self) -> complex:
        return complex(float(self))

    def to_json(self) -> dict:
        return {"q": str(self.q), "s": str(self.s), "D": self.D, "approx": float(self)}


def qe(x, D: int) -> QuadExt:
    """Lift an int, Fraction or QuadExt into Q(sqrt(D))."""
    if isinstance(x, QuadExt):
        if x.D != D:
            raise ValueError("field mismatch")
        return x
    return QuadExt(x, 0, D)


def to_float(x) -> float:
    return float(x)
