"""Exact scalar arithmetic over the ring Z[i, 1/sqrt(2)].

Every value is represented as

    (a + b*sqrt(2) + i*(c + d*sqrt(2))) / 2**k

with arbitrary-precision integer coefficients.  The ring is closed under
addition, multiplication, conjugation and division by sqrt(2), and it
contains every matrix entry of the Hadamard, phase, T, X, CNOT and
Toffoli gates.  That makes it a sufficient scalar domain for exact
simulation of the machines in this package.
"""

from __future__ import annotations

import math
from fractions import Fraction

_SQRT2 = math.sqrt(2.0)


class ExactAmplitude:
    """Element of Z[i, 1/sqrt(2)], kept in canonical (minimal-k) form."""

    __slots__ = ("a", "b", "c", "d", "k", "_hash")

    def __init__(self, a: int, b: int = 0, c: int = 0, d: int = 0, k: int = 0):
        if k < 0:
            raise ValueError("denominator exponent k must be >= 0")
        # canonical form: halve all coefficients while they are all even
        while k > 0 and not ((a | b | c | d) & 1):
            a >>= 1
            b >>= 1
            c >>= 1
            d >>= 1
            k -= 1
        if a == b == c == d == 0:
            k = 0
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.k = k
        self._hash = hash((a, b, c, d, k))

    # -- constructors -------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "ExactAmplitude":
        return cls(n)

    @classmethod
    def from_tuple(cls, t) -> "ExactAmplitude":
        a, b, c, d, k = (int(x) for x in t)
        return cls(a, b, c, d, k)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.k)

    # -- ring operations ----------------------------------------------

    def _with_k(self, k: int) -> tuple[int, int, int, int]:
        """Coefficients rescaled to denominator 2**k (k >= self.k)."""
        shift = k - self.k
        return (self.a << shift, self.b << shift, self.c << shift, self.d << shift)

    def __add__(self, other: "ExactAmplitude") -> "ExactAmplitude":
        if not isinstance(other, ExactAmplitude):
            return NotImplemented
        k = max(self.k, other.k)
        a1, b1, c1, d1 = self._with_k(k)
        a2, b2, c2, d2 = other._with_k(k)
        return ExactAmplitude(a1 + a2, b1 + b2, c1 + c2, d1 + d2, k)

    def __sub__(self, other: "ExactAmplitude") -> "ExactAmplitude":
        return self + (-other)

    def __neg__(self) -> "ExactAmplitude":
        return ExactAmplitude(-self.a, -self.b, -self.c, -self.d, self.k)

    def __mul__(self, other: "ExactAmplitude") -> "ExactAmplitude":
        if not isinstance(other, ExactAmplitude):
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # (r1 + i*i1)(r2 + i*i2) with r = a + b*sqrt2, i = c + d*sqrt2
        a = a1 * a2 + 2 * b1 * b2 - c1 * c2 - 2 * d1 * d2
        b = a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2
        c = a1 * c2 + 2 * b1 * d2 + c1 * a2 + 2 * d1 * b2
        d = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
        return ExactAmplitude(a, b, c, d, self.k + other.k)

    def conjugate(self) -> "ExactAmplitude":
        return ExactAmplitude(self.a, self.b, -self.c, -self.d, self.k)

    def abs_squared(self) -> "ExactAmplitude":
        """|z|^2, always an element with zero imaginary part."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return ExactAmplitude(
            a * a + 2 * b * b + c * c + 2 * d * d,
            2 * (a * b + c * d),
            0,
            0,
            2 * self.k,
        )

    def times_inv_sqrt2(self) -> "ExactAmplitude":
        """Multiply by 1/sqrt(2) = sqrt(2)/2."""
        return ExactAmplitude(2 * self.b, self.a, 2 * self.d, self.c, self.k + 1)

    def times_sqrt2(self) -> "ExactAmplitude":
        return ExactAmplitude(2 * self.b, self.a, 2 * self.d, self.c, self.k)

    # -- predicates and conversions -----------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_real(self) -> bool:
        return self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def real_as_fraction(self) -> Fraction:
        """Exact rational value; raises if the value is irrational or complex."""
        if not self.is_rational():
            raise ValueError(f"{self!r} is not an exact rational")
        return Fraction(self.a, 1 << self.k)

    def to_complex(self) -> complex:
        scale = 1.0 / (1 << self.k) if self.k < 1024 else 2.0 ** (-self.k)
        return complex(
            (self.a + self.b * _SQRT2) * scale,
            (self.c + self.d * _SQRT2) * scale,
        )

    def real_sign(self) -> int:
        """Exact sign of the real part (imaginary part must be zero)."""
        if self.c != 0 or self.d != 0:
            raise ValueError("real_sign of a non-real value")
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # a and b have opposite signs: compare a^2 with 2 b^2
        if a > 0:  # b < 0
            return 1 if a * a > 2 * b * b else -1
        return -1 if a * a > 2 * b * b else 1

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactAmplitude):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
            and self.k == other.k
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ExactAmplitude({self.a}, {self.b}, {self.c}, {self.d}, {self.k})"

    def __str__(self) -> str:
        return f"({self.a}{self.b:+}√2{self.c:+}i{self.d:+}i√2)/2^{self.k}"


ZERO = ExactAmplitude(0)
ONE = ExactAmplitude(1)
MINUS_ONE = ExactAmplitude(-1)
I_UNIT = ExactAmplitude(0, 0, 1, 0)
INV_SQRT2 = ExactAmplitude(0, 1, 0, 0, 1)


def exact_mul(x: ExactAmplitude, y: ExactAmplitude) -> ExactAmplitude:
    """Exact ring product in canonical form."""
    return x * y


def exact_sum(values) -> ExactAmplitude:
    total = ZERO
    for v in values:
        total = total + v
    return total
