"""
Fixed-point big floats with a rigorous absolute error bound.

A BigFloat stores an integer mantissa m at precision p (value m / 2^p) and a
Rational ``error`` such that the quantity it stands for lies within
[m/2^p - error, m/2^p + error]. Every operation widens the bound by the
propagated input errors plus its own rounding.
"""

from __future__ import annotations

from typing import Any, Optional, Union

import gmpy2
from gmpy2 import mpq, mpz

from .arith import Rational, to_rational
from .errors import ParameterError, PrecisionError

GUARD_DIGITS = 8
GUARD_BITS = 32

Number = Union["BigFloat", int, Rational]


def precision_for_digits(digits: int, guard_digits: int = GUARD_DIGITS, guard_bits: int = GUARD_BITS) -> int:
    """Bits needed to carry ``digits + guard_digits`` decimals plus guard bits."""
    # 3322/1000 > log2(10)
    return (digits + guard_digits) * 3322 // 1000 + 1 + guard_bits


def _round_div(num: mpz, den: mpz) -> mpz:
    """Nearest integer to num/den (den > 0), halves away from -inf."""
    return (2 * num + den) // (2 * den)


def isqrt_newton(n: int) -> mpz:
    """floor(sqrt(n)) by Newton's fixpoint iteration on integers."""
    if n < 0:
        raise ParameterError(f"integer square root of negative {n}")
    n = mpz(n)
    if n < 2:
        return n
    x = mpz(1) << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            return x
        x = y


def decimal_exponent(bound: Any) -> Optional[int]:
    """Smallest integer k with bound <= 10^k; None for a zero bound."""
    bound = to_rational(bound)
    if bound < 0:
        raise ParameterError(f"bound must be nonnegative, got {bound}")
    if bound == 0:
        return None
    k = len(str(bound.numerator)) - len(str(bound.denominator))
    while bound > mpq(10) ** k:
        k += 1
    while bound <= mpq(10) ** (k - 1):
        k -= 1
    return k


class BigFloat:
    __slots__ = ("mantissa", "precision", "error")

    def __init__(self, mantissa: Any, precision: int, error: Any = 0):
        if precision < 0:
            raise ParameterError(f"precision must be nonnegative, got {precision}")
        self.mantissa = mpz(mantissa)
        self.precision = int(precision)
        self.error = to_rational(error)

    @classmethod
    def from_rational(cls, value: Any, precision: int, error: Any = 0) -> "BigFloat":
        q = to_rational(value)
        scaled = q * (mpz(1) << precision)
        m = _round_div(scaled.numerator, scaled.denominator)
        exact = m * scaled.denominator == scaled.numerator
        rounding = 0 if exact else mpq(1, mpz(1) << (precision + 1))
        return cls(m, precision, to_rational(error) + rounding)

    # ---------- inspection ---------- #

    @property
    def value(self) -> mpq:
        return mpq(self.mantissa, mpz(1) << self.precision)

    @property
    def ulp(self) -> mpq:
        return mpq(1, mpz(1) << self.precision)

    def distance_bound(self, other: Number) -> mpq:
        """Upper bound on |x - y| for the quantities represented."""
        if isinstance(other, BigFloat):
            return abs(self.value - other.value) + self.error + other.error
        return abs(self.value - to_rational(other)) + self.error

    def contains(self, q: Any) -> bool:
        return abs(self.value - to_rational(q)) <= self.error

    def error_exponent(self) -> Optional[int]:
        return decimal_exponent(self.error)

    # ---------- arithmetic ---------- #

    def _coerce(self, other: Number) -> "BigFloat":
        if isinstance(other, BigFloat):
            return other
        return BigFloat.from_rational(other, self.precision)

    def _aligned(self, other: "BigFloat") -> tuple[mpz, mpz, int]:
        p = max(self.precision, other.precision)
        return self.mantissa << (p - self.precision), other.mantissa << (p - other.precision), p

    def __add__(self, other: Number) -> "BigFloat":
        other = self._coerce(other)
        a, b, p = self._aligned(other)
        return BigFloat(a + b, p, self.error + other.error)

    __radd__ = __add__

    def __neg__(self) -> "BigFloat":
        return BigFloat(-self.mantissa, self.precision, self.error)

    def __sub__(self, other: Number) -> "BigFloat":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "BigFloat":
        return self._coerce(other) - self

    def __mul__(self, other: Number) -> "BigFloat":
        other = self._coerce(other)
        a, b, p = self._aligned(other)
        m = _round_div(a * b, mpz(1) << p)
        rounding = mpq(1, mpz(1) << (p + 1))
        err = abs(self.value) * other.error + abs(other.value) * self.error + self.error * other.error
        return BigFloat(m, p, err + rounding)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "BigFloat":
        other = self._coerce(other)
        a, b, p = self._aligned(other)
        lower = abs(other.value) - other.error
        if lower <= 0:
            raise PrecisionError(f"divisor interval [{other.value} +/- {other.error}] contains zero")
        if b < 0:
            a, b = -a, -b
        m = _round_div(a << p, b)
        half_ulp = mpq(1, mpz(1) << (p + 1))
        quotient = abs(mpq(m, mpz(1) << p)) + half_ulp
        # |x/y - a/b| <= (e_x + |a/b| e_y) / (|b| - e_y)
        err = (self.error + quotient * other.error) / lower
        return BigFloat(m, p, err + half_ulp)

    def __rtruediv__(self, other: Number) -> "BigFloat":
        return self._coerce(other) / self

    def sqrt(self) -> "BigFloat":
        p = self.precision
        low = self.value - self.error
        if low <= 0:
            raise PrecisionError(f"square root of interval [{self.value} +/- {self.error}] reaching zero")
        m = isqrt_newton(self.mantissa << p)
        # sqrt(low) >= floor(sqrt(low * 4^p)) / 2^p
        scaled_low = low * (mpz(1) << (2 * p))
        s = isqrt_newton(scaled_low.numerator // scaled_low.denominator)
        if s == 0:
            raise PrecisionError("square root lower bound vanishes at this precision")
        err = self.error / (2 * mpq(s, mpz(1) << p))
        return BigFloat(m, p, err + self.ulp)

    # ---------- output ---------- #

    def to_decimal(self, digits: int) -> str:
        """The value rounded to ``digits`` significant decimal digits."""
        if digits < 1:
            raise ParameterError(f"digits must be positive, got {digits}")
        v = self.value
        if v == 0:
            return "0"
        sign = "-" if v < 0 else ""
        v = abs(v)
        if v >= 1:
            e = len(str(v.numerator // v.denominator))
        else:
            e = 0
            while v * mpq(10) ** (1 - e) < 1:
                e -= 1
        scaled = v * mpq(10) ** (digits - e)
        body = _round_div(scaled.numerator, scaled.denominator)
        if body >= mpz(10) ** digits:
            e += 1
            scaled = v * mpq(10) ** (digits - e)
            body = _round_div(scaled.numerator, scaled.denominator)
        text = gmpy2.digits(body, 10)
        if e >= digits:
            return sign + text + "0" * (e - digits)
        if e <= 0:
            return sign + "0." + "0" * (-e) + text
        return sign + text[:e] + "." + text[e:]

    def __repr__(self) -> str:
        exponent = self.error_exponent()
        bound = f"1e{exponent}" if exponent is not None else "0"
        return f"BigFloat({self.to_decimal(20)}, prec={self.precision}, err<={bound})"


def sqrt_int(d: int, digits: int, guard_bits: int = GUARD_BITS) -> BigFloat:
    """sqrt(d) at enough precision for ``digits`` decimals; exact for squares."""
    if d < 1:
        raise ParameterError(f"sqrt_int needs d >= 1, got {d}")
    p = precision_for_digits(digits, 0, guard_bits)
    root = isqrt_newton(d)
    if root * root == d:
        return BigFloat(root << p, p, 0)
    m = isqrt_newton(mpz(d) << (2 * p))
    return BigFloat(m, p, mpq(1, mpz(1) << p))
