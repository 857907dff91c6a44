"""
Exact arithmetic building blocks
"""
from fractions import Fraction

import numpy as np
import pytest
from gmpy2 import mpq
from pydantic import ValidationError

from hypergeo.arith import (
    AlgebraicValue,
    binomial,
    factorial_ratio,
    is_nonpositive_integer,
    is_squarefree,
    pochhammer,
    squarefree_decompose,
    to_rational,
)
from hypergeo.errors import ParameterError

__report_module__ = "arith"


def test_to_rational_accepts_exact_inputs(record):
    cases = [("-1/4", mpq(-1, 4)), ("8", mpq(8)), (3, mpq(3)), (Fraction(2, 6), mpq(1, 3)), (mpq(5, 7), mpq(5, 7))]
    for raw, expected in cases:
        got = to_rational(raw)
        record(f"to_rational({raw!r})", got == expected, f"got {got}")


@pytest.mark.parametrize("raw", [0.5, "1.5", "1/0", True, "abc", None])
def test_to_rational_rejects_inexact_inputs(raw, record):
    with pytest.raises(ValueError):
        to_rational(raw)
    record(f"to_rational rejects {raw!r}", True)


def test_pochhammer_values(record):
    record("(1/2)_3 = 15/8", pochhammer(mpq(1, 2), 3) == mpq(15, 8))
    record("(a)_0 = 1", pochhammer(mpq(-7, 3), 0) == 1)
    record("(-2)_3 = 0", pochhammer(-2, 3) == 0)
    record("(1)_5 = 120", pochhammer(1, 5) == 120)
    with pytest.raises(ParameterError):
        pochhammer(1, -1)


def test_binomial_and_factorial_ratio(record):
    record("C(4,2) = 6", binomial(4, 2) == 6)
    record("C(3,5) = 0", binomial(3, 5) == 0)
    # (4n)!/(n!^2 (2n)!) = C(4n,2n) C(2n,n)
    for n in range(8):
        record(f"factorial_ratio({n})", factorial_ratio(n) == binomial(4 * n, 2 * n) * binomial(2 * n, n))
    record("factorial_ratio(1) = 12", factorial_ratio(1) == 12)


def test_squarefree_decompose(record):
    cases = {1025: (5, 41), 5: (1, 5), 1: (1, 1), 72: (6, 2), 1024 * 1025: (160, 41)}
    for m, expected in cases.items():
        got = squarefree_decompose(m)
        record(f"squarefree_decompose({m})", got == expected, f"got {got}")
    record("41 squarefree", is_squarefree(41))
    record("12 not squarefree", not is_squarefree(12))
    with pytest.raises(ParameterError):
        squarefree_decompose(0)


def test_nonpositive_integer_detection(record):
    record("0", is_nonpositive_integer(mpq(0)))
    record("-3", is_nonpositive_integer(mpq(-3)))
    record("-1/2 is not", not is_nonpositive_integer(mpq(-1, 2)))
    record("2 is not", not is_nonpositive_integer(mpq(2)))


def test_algebraic_value_canonical_forms(record):
    record("sqrt(1025) = 5*sqrt(41)", str(AlgebraicValue.sqrt_of(1025)) == "5*sqrt(41)")
    record("sqrt(4/5) = (2/5)*sqrt(5)", AlgebraicValue.sqrt_of(mpq(4, 5)) == AlgebraicValue(r=mpq(2, 5), d=5))
    record("sqrt(9) rational", AlgebraicValue.sqrt_of(9).is_rational)
    record("zero normalises radicand", AlgebraicValue(r=0, d=5).d == 1)

    value = AlgebraicValue(r=mpq(2, 5), d=5)
    record("inverse of (2/5)sqrt5 is sqrt5/2", value.inverse() == AlgebraicValue(r=mpq(1, 2), d=5))
    record("squared", value.squared() == mpq(4, 5))
    record("sqrt5 * sqrt5 = 5", AlgebraicValue(r=1, d=5) * AlgebraicValue(r=1, d=5) == AlgebraicValue.rational(5))
    record("render 10*sqrt(5)", str(AlgebraicValue(r=10, d=5)) == "10*sqrt(5)")


def test_algebraic_value_rejects_non_squarefree(record):
    with pytest.raises(ParameterError):
        AlgebraicValue(r=1, d=12)
    with pytest.raises((ParameterError, ValidationError)):
        AlgebraicValue.sqrt_of(-1)
    record("non-squarefree radicand rejected", True)


def test_pochhammer_splits_at_any_index(record):
    for a in (mpq(1, 2), mpq(-7, 3), mpq(5)):
        for m, n in ((0, 4), (3, 5), (6, 0), (7, 9)):
            record(f"({a})_{m + n} = ({a})_{m} ({a}+{m})_{n}", pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n))


def test_factorial_ratio_closed_form_and_bound(record):
    record("binomial(6, 3) = 20", binomial(6, 3) == 20)
    record("factorial_ratio(2) = 420", factorial_ratio(2) == 420)
    quarters = mpq(1)
    closed_form_failures, bound_failures = [], []
    for n in range(201):
        # (1/4)_n (3/4)_n / n!^2, advanced one factor at a time
        if quarters != mpq(factorial_ratio(n), 2 ** (6 * n)):
            closed_form_failures.append(n)
        if factorial_ratio(n) > 64 ** n:
            bound_failures.append(n)
        quarters *= (mpq(1, 4) + n) * (mpq(3, 4) + n) / mpq(n + 1) ** 2
    record("(1/4)_n (3/4)_n / n!^2 = factorial_ratio(n) / 2^(6n), n <= 200", not closed_form_failures, closed_form_failures[:5])
    record("factorial_ratio(n) <= 64^n, n <= 200", not bound_failures, bound_failures[:5])


def test_squarefree_decompose_recovers_random_factorisations(record):
    rng = np.random.default_rng(41)
    squarefree = [d for d in range(1, 400) if is_squarefree(d)]
    for _ in range(25):
        s = int(rng.integers(1, 2000))
        d = int(rng.choice(squarefree))
        got = squarefree_decompose(s * s * d)
        record(f"squarefree_decompose({s}^2 * {d})", got == (s, d), got)
