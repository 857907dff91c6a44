"""
Exact integer and rational building blocks.

Rational is gmpy2's ``mpq``: always in lowest terms with a positive
denominator, so equality is a structural comparison. Nothing in this module
touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Annotated, Any

import gmpy2
from gmpy2 import mpq, mpz
from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator, model_validator

from .errors import ParameterError


Rational = type(mpq())

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_rational(value: Any) -> mpq:
    """
    Coerce ints, Fractions, mpz/mpq and "p/q" strings to an exact Rational.

    Floats are refused: a float has already been rounded.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, (int, type(mpz()))):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise ValueError(f"not a rational literal: {value!r}")
        num, den = match.group(1), match.group(2)
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return mpq(int(num), int(den) if den is not None else 1)
    raise ValueError(f"cannot convert {type(value).__name__} to an exact rational")


RationalField = Annotated[
    Rational,
    PlainValidator(to_rational),
    PlainSerializer(lambda q: str(q), return_type=str, when_used="json"),
]


def is_nonpositive_integer(q: mpq) -> bool:
    """True for 0, -1, -2, ... (the poles of a lower hypergeometric parameter)."""
    return q.denominator == 1 and q <= 0


def pochhammer(a: Any, n: int) -> mpq:
    """Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1."""
    if n < 0:
        raise ParameterError(f"pochhammer index must be nonnegative, got {n}")
    a = to_rational(a)
    result = mpq(1)
    for k in range(n):
        result *= a + k
    return result


def binomial(n: int, k: int) -> int:
    """n choose k, with the convention binomial(n, k) = 0 for k > n."""
    if n < 0 or k < 0:
        raise ParameterError(f"binomial arguments must be nonnegative, got ({n}, {k})")
    if k > n:
        return 0
    return int(gmpy2.bincoef(n, k))


def factorial_ratio(n: int) -> int:
    """(4n)!/(n!^2 (2n)!), which equals C(4n, 2n)·C(2n, n)."""
    if n < 0:
        raise ParameterError(f"factorial_ratio index must be nonnegative, got {n}")
    value, remainder = divmod(gmpy2.fac(4 * n), gmpy2.fac(n) ** 2 * gmpy2.fac(2 * n))
    assert remainder == 0
    return int(value)


def squarefree_decompose(m: int) -> tuple[int, int]:
    """
    Split m = s^2 * d with d squarefree, by trial division.

    Inputs met in practice are products of small primes and a few primes
    below 10^4, so trial division is plenty.
    """
    if m < 1:
        raise ParameterError(f"squarefree_decompose needs m >= 1, got {m}")
    m = int(m)
    s, d = 1, 1
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= m
    return s, d


def is_squarefree(d: int) -> bool:
    return d >= 1 and squarefree_decompose(d)[0] == 1


class AlgebraicValue(BaseModel):
    """Exact number r·sqrt(d), d squarefree; d = 1 is a plain rational."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r: RationalField
    d: int = 1

    @model_validator(mode="before")
    @classmethod
    def _zero_has_unit_radicand(cls, values: Any) -> Any:
        if isinstance(values, dict) and "r" in values and to_rational(values["r"]) == 0:
            values = {**values, "d": 1}
        return values

    @model_validator(mode="after")
    def _check_squarefree(self) -> "AlgebraicValue":
        if not is_squarefree(self.d):
            raise ParameterError(f"radicand {self.d} is not a squarefree positive integer")
        return self

    @classmethod
    def rational(cls, q: Any) -> "AlgebraicValue":
        return cls(r=q, d=1)

    @classmethod
    def sqrt_of(cls, q: Any) -> "AlgebraicValue":
        """sqrt(q) for a nonnegative rational q, brought to canonical form."""
        q = to_rational(q)
        if q < 0:
            raise ParameterError(f"square root of negative rational {q}")
        if q == 0:
            return cls(r=0, d=1)
        num, den = int(q.numerator), int(q.denominator)
        # sqrt(num/den) = sqrt(num*den)/den
        s, d = squarefree_decompose(num * den)
        return cls(r=mpq(s, den), d=d)

    def __mul__(self, other: Any) -> "AlgebraicValue":
        if isinstance(other, AlgebraicValue):
            s, d = squarefree_decompose(self.d * other.d)
            return AlgebraicValue(r=self.r * other.r * s, d=d)
        return AlgebraicValue(r=self.r * to_rational(other), d=self.d)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicValue":
        if self.r == 0:
            raise ZeroDivisionError("inverse of zero")
        # 1/(r sqrt d) = sqrt(d)/(r d)
        return AlgebraicValue(r=1 / (self.r * self.d), d=self.d)

    def __truediv__(self, other: Any) -> "AlgebraicValue":
        if isinstance(other, AlgebraicValue):
            return self * other.inverse()
        return AlgebraicValue(r=self.r / to_rational(other), d=self.d)

    def squared(self) -> mpq:
        return self.r * self.r * self.d

    @property
    def is_rational(self) -> bool:
        return self.d == 1

    def __str__(self) -> str:
        if self.d == 1:
            return str(self.r)
        if self.r == 1:
            return f"sqrt({self.d})"
        if self.r == -1:
            return f"-sqrt({self.d})"
        coeff = str(self.r) if self.r.denominator == 1 else f"({self.r})"
        return f"{coeff}*sqrt({self.d})"
