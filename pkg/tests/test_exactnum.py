"""Exact ring arithmetic, checked against an independent symbolic oracle."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtmlab.exactnum import (
    INV_SQRT2,
    ONE,
    ZERO,
    ExactAmplitude,
    exact_mul,
)


class SymbolicComplex:
    """Oracle: rational-complex number with a symbolic sqrt(2) part.

    Implemented with Fractions only, entirely independent of the
    production representation (no shared denominator-exponent trick).
    """

    def __init__(self, ra, rb, ia, ib):
        self.ra = Fraction(ra)
        self.rb = Fraction(rb)
        self.ia = Fraction(ia)
        self.ib = Fraction(ib)

    @classmethod
    def of(cls, amp: ExactAmplitude) -> "SymbolicComplex":
        den = Fraction(1, 2**amp.k)
        return cls(amp.a * den, amp.b * den, amp.c * den, amp.d * den)

    def __mul__(self, o):
        ra = self.ra * o.ra + 2 * self.rb * o.rb - self.ia * o.ia - 2 * self.ib * o.ib
        rb = self.ra * o.rb + self.rb * o.ra - self.ia * o.ib - self.ib * o.ia
        ia = self.ra * o.ia + 2 * self.rb * o.ib + self.ia * o.ra + 2 * self.ib * o.rb
        ib = self.ra * o.ib + self.rb * o.ia + self.ia * o.rb + self.ib * o.ra
        return SymbolicComplex(ra, rb, ia, ib)

    def __add__(self, o):
        return SymbolicComplex(
            self.ra + o.ra, self.rb + o.rb, self.ia + o.ia, self.ib + o.ib
        )

    def __eq__(self, o):
        return (
            self.ra == o.ra and self.rb == o.rb and self.ia == o.ia and self.ib == o.ib
        )


amplitudes = st.builds(
    ExactAmplitude,
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.integers(-50, 50),
    st.integers(0, 6),
)


def test_one_times_one():
    assert exact_mul(ONE, ONE) == ExactAmplitude(1, 0, 0, 0, 0)


def test_inv_sqrt2_squared_is_half():
    assert exact_mul(INV_SQRT2, INV_SQRT2) == ExactAmplitude(1, 0, 0, 0, 1)


def test_one_plus_i_times_one_minus_i():
    # (1+i)(1-i) = 2, cross-checked against the symbolic oracle
    x = ExactAmplitude(1, 0, 1, 0, 0)
    y = ExactAmplitude(1, 0, -1, 0, 0)
    got = exact_mul(x, y)
    assert SymbolicComplex.of(got) == SymbolicComplex.of(x) * SymbolicComplex.of(y)
    assert got == ExactAmplitude(2, 0, 0, 0, 0)


@given(amplitudes, amplitudes)
def test_mul_matches_symbolic_oracle(x, y):
    assert SymbolicComplex.of(exact_mul(x, y)) == SymbolicComplex.of(
        x
    ) * SymbolicComplex.of(y)


@given(amplitudes, amplitudes)
def test_add_matches_symbolic_oracle(x, y):
    assert SymbolicComplex.of(x + y) == SymbolicComplex.of(x) + SymbolicComplex.of(y)


@given(amplitudes)
def test_canonical_form_minimal_k(x):
    if x.k > 0:
        assert (x.a & 1) or (x.b & 1) or (x.c & 1) or (x.d & 1)
    if x.is_zero():
        assert x.k == 0


@given(amplitudes, amplitudes)
def test_abs_squared_multiplicative(x, y):
    assert exact_mul(x, y).abs_squared() == exact_mul(
        x.abs_squared(), y.abs_squared()
    )


@given(amplitudes)
def test_abs_squared_is_real(x):
    sq = x.abs_squared()
    assert sq.is_real()
    assert sq.real_sign() >= 0


def test_ring_closure_float_rendering():
    # 1e4 random pairs: float rendering of exact ops matches complex
    # double arithmetic to 1e-9 relative error.
    rng = random.Random(20240811)
    for _ in range(10_000):
        x = ExactAmplitude(
            rng.randint(-9, 9),
            rng.randint(-9, 9),
            rng.randint(-9, 9),
            rng.randint(-9, 9),
            rng.randint(0, 4),
        )
        y = ExactAmplitude(
            rng.randint(-9, 9),
            rng.randint(-9, 9),
            rng.randint(-9, 9),
            rng.randint(-9, 9),
            rng.randint(0, 4),
        )
        for exact, approx in (
            (exact_mul(x, y), x.to_complex() * y.to_complex()),
            (x + y, x.to_complex() + y.to_complex()),
        ):
            scale = max(1.0, abs(approx))
            assert abs(exact.to_complex() - approx) <= 1e-9 * scale


def test_times_inv_sqrt2():
    assert ONE.times_inv_sqrt2() == INV_SQRT2
    # applying it twice divides by 2
    assert ONE.times_inv_sqrt2().times_inv_sqrt2() == ExactAmplitude(1, 0, 0, 0, 1)


def test_real_sign_exact():
    # 3 - 2*sqrt(2) > 0 but barely: float would say 0.17157...
    assert ExactAmplitude(3, -2, 0, 0, 0).real_sign() == 1
    assert ExactAmplitude(-3, 2, 0, 0, 0).real_sign() == -1
    # 1 - sqrt(2) < 0
    assert ExactAmplitude(1, -1, 0, 0, 0).real_sign() == -1
    assert ZERO.real_sign() == 0
    with pytest.raises(ValueError):
        ExactAmplitude(0, 0, 1, 0, 0).real_sign()


def test_rational_conversion():
    assert ExactAmplitude(3, 0, 0, 0, 2).real_as_fraction() == Fraction(3, 4)
    with pytest.raises(ValueError):
        ExactAmplitude(1, 1, 0, 0, 0).real_as_fraction()


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        ExactAmplitude(1, 0, 0, 0, -1)


@settings(max_examples=50)
@given(amplitudes)
def test_conjugate_involution(x):
    assert x.conjugate().conjugate() == x
    assert exact_mul(x, x.conjugate()) == x.abs_squared()
