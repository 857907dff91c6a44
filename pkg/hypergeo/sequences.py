"""
The combinatorial sequences behind the pi^-2 series and their recurrences.

u_n   = sum (1/2)_v^3/v!^3 * (1/2)_(n-v)/(n-v)!           (rational)
U_n   = sum C(2k,k)^3 C(2n-2k,n-k) 16^(n-k) = 2^(6n) u_n   (integer)
A_n   = C(2n,n)^2 sum C(2k,k)^2 C(2n-2k,n-k)^2             (integer)
B_n   = sum C(n,k)^4                                        (integer)

Every sequence has at least two independent constructions so they can be
cross-checked; recurrences are verified against them, never trusted alone.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any, Optional, Sequence

from gmpy2 import mpq, mpz
from pydantic import BaseModel, ConfigDict, field_validator

from .arith import binomial, to_rational
from .errors import IntegralityError, ParameterError

logger = logging.getLogger(__name__)


class UMethod(str, Enum):
    CONVOLUTION = "convolution"
    QUARTERS = "quarters"
    RECURRENCE = "recurrence"


class BigUMethod(str, Enum):
    DIRECT = "direct"
    RECURRENCE = "recurrence"
    RESCALE = "rescale"


def _check_nmax(nmax: int) -> None:
    if nmax < 0:
        raise ParameterError(f"nmax must be nonnegative, got {nmax}")


def _ratio_table(start: mpq, nmax: int) -> list[mpq]:
    """(start)_v / v! for v = 0..nmax."""
    table = [mpq(1)]
    for v in range(nmax):
        table.append(table[-1] * (start + v) / (v + 1))
    return table


def _method(enum_type: type[Enum], value: Any) -> Any:
    try:
        return enum_type(value)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_type)
        raise ParameterError(f"unknown method {value!r}; expected one of: {allowed}") from None


# ---------- u_n ---------- #

def u_seq(nmax: int, method: Any = UMethod.CONVOLUTION) -> list[mpq]:
    """u_0 .. u_nmax by the chosen construction."""
    _check_nmax(nmax)
    method = _method(UMethod, method)

    if method is UMethod.CONVOLUTION:
        half = _ratio_table(mpq(1, 2), nmax)
        cubes = [h ** 3 for h in half]
        return [sum((cubes[v] * half[n - v] for v in range(n + 1)), mpq(0)) for n in range(nmax + 1)]

    if method is UMethod.QUARTERS:
        quarter = _ratio_table(mpq(1, 4), nmax)
        three_quarters = _ratio_table(mpq(3, 4), nmax)
        return [
            sum(((quarter[v] * three_quarters[n - v]) ** 2 for v in range(n + 1)), mpq(0))
            for n in range(nmax + 1)
        ]

    values = [mpq(1), mpq(5, 8)][: nmax + 1]
    for n in range(1, nmax):
        nxt = ((2 * n + 1) * (8 * n * n + 8 * n + 5) * values[n] - 8 * n ** 3 * values[n - 1]) / (8 * (n + 1) ** 3)
        values.append(nxt)
    return values


# ---------- U_n ---------- #

def _central_binomials(nmax: int) -> list[mpz]:
    return [mpz(binomial(2 * k, k)) for k in range(nmax + 1)]


def U_seq(nmax: int, method: Any = BigUMethod.DIRECT) -> list[int]:
    """U_0 .. U_nmax; every construction must land on integers."""
    _check_nmax(nmax)
    method = _method(BigUMethod, method)

    if method is BigUMethod.DIRECT:
        central = _central_binomials(nmax)
        cubes = [c ** 3 for c in central]
        return [
            int(sum((cubes[k] * central[n - k] * mpz(16) ** (n - k) for k in range(n + 1)), mpz(0)))
            for n in range(nmax + 1)
        ]

    if method is BigUMethod.RECURRENCE:
        values = [mpz(1), mpz(40)][: nmax + 1]
        for n in range(1, nmax):
            numerator = 8 * (2 * n + 1) * (8 * n * n + 8 * n + 5) * values[n] - 4096 * n ** 3 * values[n - 1]
            quotient, remainder = divmod(numerator, (n + 1) ** 3)
            if remainder:
                raise IntegralityError(f"U_{n + 1} from the recurrence is not an integer")
            values.append(quotient)
        return [int(v) for v in values]

    out = []
    for n, u in enumerate(u_seq(nmax, UMethod.CONVOLUTION)):
        scaled = u * mpz(2) ** (6 * n)
        if scaled.denominator != 1:
            raise IntegralityError(f"2^(6*{n}) * u_{n} = {scaled} is not an integer")
        out.append(int(scaled.numerator))
    return out


# ---------- A_n, B_n ---------- #

def A_seq(nmax: int) -> list[int]:
    _check_nmax(nmax)
    squares = [c * c for c in _central_binomials(nmax)]
    return [
        int(squares[n] * sum((squares[k] * squares[n - k] for k in range(n + 1)), mpz(0)))
        for n in range(nmax + 1)
    ]


def B_seq(nmax: int) -> list[int]:
    _check_nmax(nmax)
    return [sum(binomial(n, k) ** 4 for k in range(n + 1)) for n in range(nmax + 1)]


# =============================================================================
# Recurrences
# =============================================================================

class RecurrenceSpec(BaseModel):
    """
    sum_i p_i(n) * s_(n + i - shift) = 0, each p_i given by its integer
    coefficients in ascending powers of n.

    With shift = 1 and three polynomials the terms read s_(n-1), s_n, s_(n+1),
    the way the recurrences are usually written.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    shift: int = 0
    polynomials: tuple[tuple[int, ...], ...]

    @field_validator("polynomials")
    @classmethod
    def _leading_nonzero(cls, value: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
        if not value:
            raise ParameterError("a recurrence needs at least one coefficient polynomial")
        if not any(value[-1]):
            raise ParameterError("leading coefficient polynomial is identically zero")
        return value

    @property
    def order(self) -> int:
        return len(self.polynomials) - 1

    def coefficient(self, i: int, n: int) -> int:
        acc = 0
        for c in reversed(self.polynomials[i]):
            acc = acc * n + c
        return acc

    def residual(self, seq: Sequence[Any], n: int) -> mpq:
        return sum(
            (self.coefficient(i, n) * to_rational(seq[n + i - self.shift]) for i in range(len(self.polynomials))),
            mpq(0),
        )


# 8(n+1)^3 u_(n+1) - (2n+1)(8n^2+8n+5) u_n + 8n^3 u_(n-1) = 0
U_SMALL_RECURRENCE = RecurrenceSpec(
    name="u_n",
    shift=1,
    polynomials=((0, 0, 0, 8), (-5, -18, -24, -16), (8, 24, 24, 8)),
)

# (n+1)^3 U_(n+1) - 8(2n+1)(8n^2+8n+5) U_n + 4096 n^3 U_(n-1) = 0
U_BIG_RECURRENCE = RecurrenceSpec(
    name="U_n",
    shift=1,
    polynomials=((0, 0, 0, 4096), (-40, -144, -192, -128), (1, 3, 3, 1)),
)


class RecurrenceReport(BaseModel):
    name: str
    n_lo: int
    n_hi: int
    holds: bool
    first_failure: Optional[int] = None


def check_recurrence(seq: Sequence[Any], rec: RecurrenceSpec, n_lo: int, n_hi: int) -> RecurrenceReport:
    """Evaluate the recurrence exactly at every n in [n_lo, n_hi]."""
    if n_lo > n_hi:
        raise ParameterError(f"empty range [{n_lo}, {n_hi}]")
    if n_lo - rec.shift < 0:
        raise ParameterError(f"range start {n_lo} reaches before s_0 for shift {rec.shift}")
    needed = n_hi + rec.order - rec.shift
    if needed >= len(seq):
        raise ParameterError(f"sequence of length {len(seq)} does not reach index {needed}")

    for n in range(n_lo, n_hi + 1):
        if rec.residual(seq, n) != 0:
            logger.warning("%s recurrence fails at n=%d", rec.name, n)
            return RecurrenceReport(name=rec.name, n_lo=n_lo, n_hi=n_hi, holds=False, first_failure=n)
    return RecurrenceReport(name=rec.name, n_lo=n_lo, n_hi=n_hi, holds=True)
