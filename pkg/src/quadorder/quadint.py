from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cheby import t_exact, u_prev_exact
from .modarith import factorize


@lru_cache(maxsize=None)
def _check_radicand(d: int) -> None:
    if d in (0, 1):
        raise ValueError("the radicand must be a square-free integer other than 0 and 1")
    if not factorize(abs(d)).is_squarefree():
        raise ValueError(f"the radicand {d} is not square-free")


@dataclass(frozen=True)
class Mat2:
    e00: int
    e01: int
    e10: int
    e11: int

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @property
    def trace(self) -> int:
        return self.e00 + self.e11

    @property
    def det(self) -> int:
        return self.e00 * self.e11 - self.e01 * self.e10

    def __mul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.e00 * other.e00 + self.e01 * other.e10,
            self.e00 * other.e01 + self.e01 * other.e11,
            self.e10 * other.e00 + self.e11 * other.e10,
            self.e10 * other.e01 + self.e11 * other.e11,
        )

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            raise ValueError("negative matrix powers are not integral in general")
        result, base, k = Mat2.identity(), self, n
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __mod__(self, m: int) -> "Mat2":
        return Mat2(self.e00 % m, self.e01 % m, self.e10 % m, self.e11 % m)


@dataclass(frozen=True)
class QuadInt:
    """a + b*sqrt(d), or (a + b*sqrt(d))/2 with a == b (mod 2) when d == 1 (mod 4)."""

    a: int
    b: int
    d: int

    def __post_init__(self) -> None:
        _check_radicand(self.d)
        if self.d % 4 == 1 and (self.a + self.b) % 2:
            raise ValueError(
                "for d == 1 (mod 4) the two coordinates must have equal parity"
            )

    @classmethod
    def one(cls, d: int) -> "QuadInt":
        return cls(2, 0, d) if d % 4 == 1 else cls(1, 0, d)

    @property
    def r(self) -> int:
        return self.d % 4

    @property
    def norm(self) -> int:
        n = self.a * self.a - self.b * self.b * self.d
        return n // 4 if self.r == 1 else n

    @property
    def trace_x(self) -> int:
        return self.a if self.r == 1 else 2 * self.a

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.d)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        if not isinstance(other, QuadInt):
            return NotImplemented
        if other.d != self.d:
            raise ValueError("cannot multiply integers from different fields")
        a1, b1, a2, b2, d = self.a, self.b, other.a, other.b, self.d
        if self.r == 1:
            # numerators stay even because both factors have equal-parity pairs
            return QuadInt((a1 * a2 + b1 * b2 * d) // 2, (a1 * b2 + a2 * b1) // 2, d)
        return QuadInt(a1 * a2 + b1 * b2 * d, a1 * b2 + a2 * b1, d)

    def __pow__(self, n: int) -> "QuadInt":
        """n-th power through the trace/cofactor recurrences, not repeated products."""
        if n < 0:
            raise ValueError("negative powers are not integral in general")
        if n == 0:
            return QuadInt.one(self.d)
        if self.a == 0 and self.b == 0:
            return QuadInt(0, 0, self.d)
        x, s = self.trace_x, self.norm
        t = t_exact(x, s, n)
        u = u_prev_exact(x, s, n)
        if self.r == 1:
            return QuadInt(t, u * self.b, self.d)
        return QuadInt(t // 2, u * self.b, self.d)

    def embed(self) -> Mat2:
        """Image in the 2x2 integer matrices; trace and determinant match."""
        if self.norm == 0:
            raise ValueError("zero has no invertible matrix image")
        if self.r == 1:
            q = (self.d - 1) // 4
            return Mat2((self.a + self.b) // 2, self.b, q * self.b, (self.a - self.b) // 2)
        return Mat2(self.a, self.b, self.b * self.d, self.a)

    def congruent_mod_p(self, other: "QuadInt", p: int) -> bool:
        if other.d != self.d:
            raise ValueError("cannot compare integers from different fields")
        return (self.a - other.a) % p == 0 and (self.b - other.b) % p == 0

    def in_order(self, f: int) -> bool:
        """Membership in the order of conductor f, which comes down to f | b."""
        if f < 1:
            raise ValueError("the conductor must be at least 1")
        return self.b % f == 0

    def approx(self) -> float:
        if self.d < 0:
            raise ValueError("no real value for a negative radicand")
        val = self.a + self.b * math.sqrt(self.d)
        return val / 2 if self.r == 1 else val

    def __str__(self) -> str:
        core = f"{self.a} + {self.b}*sqrt({self.d})"
        return f"({core})/2" if self.r == 1 else core
