"""
High-precision evaluation of Ramanujan-type series for 1/pi and 1/pi^2.

A series is sum_n K(n) * (A n^2 + B n + C) * x^n. The kernel K(n) times x^n is
written as a product of rational step factors p_k/q_k, times an integer
sequence value where the kernel has one (U_n, A_n, B_n), which makes the
partial sums amenable to binary splitting:

    leaf k:  P = p_k,  Q = q_k,  T = c_k * p_k
    merge:   P = P1 P2,  Q = Q1 Q2,  T = T1 Q2 + P1 T2

Summation is exact. A single rounding happens at the end, and the truncated
tail is bounded from the growth estimates below:

    (1/2)_n / n!        <= 1
    (4n)!/(n!^2 (2n)!)  =  C(4n,2n) C(2n,n) <= 64^n
    U_n = 64^n u_n      <= (n+1) 64^n     (each convolution factor is <= 1)
    A_n                 <= 256^n          (sum of squares <= square of sum)
    B_n                 <= 16^n
    |A n^2 + B n + C|   <= (|A|+|B|+|C|)(n+1)^2
"""

from __future__ import annotations

import logging
from enum import Enum
from functools import lru_cache
from typing import Any, Literal, Optional

from gmpy2 import mpq, mpz
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .arith import AlgebraicValue, RationalField, binomial, factorial_ratio, is_squarefree, to_rational
from .bigfloat import GUARD_BITS, GUARD_DIGITS, BigFloat, decimal_exponent, precision_for_digits, sqrt_int
from .errors import ParameterError
from .sequences import A_seq, B_seq, BigUMethod, U_seq

logger = logging.getLogger(__name__)


class Kernel(str, Enum):
    POCHHAMMER_HALF_5 = "pochhammer_half_5"
    FR_TIMES_U = "fr_times_U"
    APERY_LIKE_A = "apery_like_A"
    YANG_B = "yang_B"


# kernel -> (e, beta) with |K(n)| <= (n+1)^e * beta^n
KERNEL_GROWTH: dict[Kernel, tuple[int, int]] = {
    Kernel.POCHHAMMER_HALF_5: (0, 1),
    Kernel.FR_TIMES_U: (1, 4096),
    Kernel.APERY_LIKE_A: (0, 256),
    Kernel.YANG_B: (0, 16),
}


def format_quadratic(a: int, b: int, c: int) -> str:
    """18, -10, -3 -> '18n^2-10n-3'."""
    parts = []
    for coeff, power in ((a, "n^2"), (b, "n"), (c, "")):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        body = f"{magnitude}{power}" if (magnitude != 1 or not power) else power
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    return text + "".join(f"{sign}{body}" for sign, body in parts[1:])


class ClaimedValue(BaseModel):
    """S * sqrt(d) / (pi^pi_power * sqrt(extra_sqrt_denom))."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    S: RationalField
    d: int = 1
    pi_power: Literal[1, 2] = 2
    extra_sqrt_denom: Optional[int] = None

    @field_validator("d")
    @classmethod
    def _squarefree(cls, value: int) -> int:
        if not is_squarefree(value):
            raise ParameterError(f"radicand {value} is not squarefree")
        return value

    @field_validator("extra_sqrt_denom")
    @classmethod
    def _positive(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ParameterError(f"extra square-root denominator must be positive, got {value}")
        return value

    @property
    def algebraic(self) -> AlgebraicValue:
        return AlgebraicValue(r=self.S, d=self.d)

    def render(self) -> str:
        pi = "pi" if self.pi_power == 1 else "pi^2"
        den = f"({pi}*sqrt({self.extra_sqrt_denom}))" if self.extra_sqrt_denom else pi
        return f"{self.algebraic}/{den}"


class RamanujanFormula(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kernel: Kernel
    quadratic: tuple[int, int, int]
    x: RationalField
    claimed: ClaimedValue
    name: str = ""
    source: str = ""
    conjectural: bool = False

    @model_validator(mode="after")
    def _converges(self) -> "RamanujanFormula":
        if self.rho >= 1:
            raise ParameterError(
                f"series does not converge provably: growth ratio {self.rho} >= 1 for x = {self.x}"
            )
        return self

    @property
    def rho(self) -> mpq:
        return KERNEL_GROWTH[self.kernel][1] * abs(self.x)

    def P(self, n: int) -> int:
        a, b, c = self.quadratic
        return a * n * n + b * n + c

    def with_quadratic(self, quadratic: tuple[int, int, int]) -> "RamanujanFormula":
        return self.model_copy(update={"quadratic": tuple(quadratic)})

    def with_claimed(self, claimed: ClaimedValue) -> "RamanujanFormula":
        return self.model_copy(update={"claimed": claimed})

    def render(self) -> str:
        kernel = {
            Kernel.POCHHAMMER_HALF_5: "(1/2)_n^5/n!^5",
            Kernel.FR_TIMES_U: "U_n*(4n)!/(n!^2(2n)!)",
            Kernel.APERY_LIKE_A: "A_n",
            Kernel.YANG_B: "B_n",
        }[self.kernel]
        a, b, c = self.quadratic
        return f"sum {kernel}*({format_quadratic(a, b, c)})*({self.x})^n = {self.claimed.render()}"


# =============================================================================
# Exact summation
# =============================================================================

@lru_cache(maxsize=16)
def _sequence(kernel: Kernel, nmax: int) -> tuple[int, ...]:
    if kernel is Kernel.FR_TIMES_U:
        return tuple(U_seq(nmax, BigUMethod.RECURRENCE))
    if kernel is Kernel.APERY_LIKE_A:
        return tuple(A_seq(nmax))
    if kernel is Kernel.YANG_B:
        return tuple(B_seq(nmax))
    return ()


def _step(kernel: Kernel, k: int) -> tuple[int, int]:
    """Kernel ratio K(k)/K(k-1) without the sequence factor, k >= 1."""
    if kernel is Kernel.POCHHAMMER_HALF_5:
        return (2 * k - 1) ** 5, (2 * k) ** 5
    if kernel is Kernel.FR_TIMES_U:
        return 4 * (4 * k - 1) * (4 * k - 3), k * k
    return 1, 1


class _Splitter:
    def __init__(self, formula: RamanujanFormula, n1: int):
        self.formula = formula
        self.kernel = formula.kernel
        self.xnum = mpz(formula.x.numerator)
        self.xden = mpz(formula.x.denominator)
        self.seq = _sequence(self.kernel, max(n1 - 1, 0)) if n1 > 0 else ()

    def coefficient(self, n: int) -> mpz:
        c = mpz(self.formula.P(n))
        if self.seq:
            c *= self.seq[n]
        return c

    def leaf(self, k: int) -> tuple[mpz, mpz, mpz]:
        if k == 0:
            return mpz(1), mpz(1), self.coefficient(0)
        num, den = _step(self.kernel, k)
        p = num * self.xnum
        q = den * self.xden
        return p, q, self.coefficient(k) * p

    def split(self, a: int, b: int) -> tuple[mpz, mpz, mpz]:
        if b - a == 1:
            return self.leaf(a)
        m = (a + b) // 2
        return _merge(self.split(a, m), self.split(m, b))

    def prefix(self, n0: int) -> tuple[mpz, mpz]:
        """prod_{k < n0} p_k and q_k."""
        p, q = mpz(1), mpz(1)
        for k in range(1, n0):
            num, den = _step(self.kernel, k)
            p *= num * self.xnum
            q *= den * self.xden
        return p, q


def _merge(left: tuple[mpz, mpz, mpz], right: tuple[mpz, mpz, mpz]) -> tuple[mpz, mpz, mpz]:
    p1, q1, t1 = left
    p2, q2, t2 = right
    return p1 * p2, q1 * q2, t1 * q2 + p1 * t2


def binary_split(formula: RamanujanFormula, n0: int, n1: int, threads: int = 1) -> tuple[int, int]:
    """
    Exact partial sum over [n0, n1) as an unreduced fraction (T, Q).

    With ``threads > 1`` the range is cut into contiguous chunks that are split
    concurrently and merged left to right; the integers are identical to the
    sequential result.
    """
    if n0 < 0 or n1 < n0:
        raise ParameterError(f"invalid summation range [{n0}, {n1})")
    if n0 == n1:
        return 0, 1
    splitter = _Splitter(formula, n1)

    count = n1 - n0
    if threads > 1 and count >= 4 * threads:
        chunks = min(threads * 4, count)
        bounds = [n0 + (count * i) // chunks for i in range(chunks + 1)]
        parts = Parallel(n_jobs=threads, prefer="threads")(
            delayed(splitter.split)(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:])
        )
        result = parts[0]
        for part in parts[1:]:
            result = _merge(result, part)
    else:
        result = splitter.split(n0, n1)

    _, q, t = result
    pre_p, pre_q = splitter.prefix(n0)
    return int(t * pre_p), int(q * pre_q)


def partial_sum(formula: RamanujanFormula, n0: int, n1: int, threads: int = 1) -> mpq:
    t, q = binary_split(formula, n0, n1, threads)
    return mpq(t, q)


def _closed_kernel(kernel: Kernel, n: int) -> mpq:
    """K(n) without its sequence factor, from closed forms rather than step ratios."""
    if kernel is Kernel.POCHHAMMER_HALF_5:
        # (1/2)_n / n! = C(2n, n) / 4^n
        return mpq(binomial(2 * n, n), 4 ** n) ** 5
    if kernel is Kernel.FR_TIMES_U:
        return mpq(factorial_ratio(n))
    return mpq(1)


def naive_sum(formula: RamanujanFormula, N: int) -> mpq:
    """sum_{n < N} term(n), one term at a time."""
    if N < 0:
        raise ParameterError(f"term count must be nonnegative, got {N}")
    if N == 0:
        return mpq(0)
    seq = _sequence(formula.kernel, N - 1)
    total = mpq(0)
    power = mpq(1)
    for n in range(N):
        k = _closed_kernel(formula.kernel, n)
        if seq:
            k *= seq[n]
        total += k * formula.P(n) * power
        power *= formula.x
    return total


# =============================================================================
# Tail bounds
# =============================================================================

def tail_bound(formula: RamanujanFormula, N: int) -> mpq:
    """
    Rational bound on |sum_{n >= N} term(n)|.

    Terms are dominated by b_n = L (n+1)^k rho^n with L = |A|+|B|+|C| and
    k = e + 2. The ratio b_(n+1)/b_n = ((n+2)/(n+1))^k rho decreases in n, so
    from the first index N' >= N where it drops below one the rest is
    geometric; b_N .. b_(N'-1) are added one by one.
    """
    if N < 0:
        raise ParameterError(f"tail start must be nonnegative, got {N}")
    e, _ = KERNEL_GROWTH[formula.kernel]
    k = e + 2
    L = sum(abs(c) for c in formula.quadratic)
    rho = formula.rho
    if L == 0:
        return mpq(0)

    def b(n: int) -> mpq:
        return L * mpq(n + 1) ** k * rho ** n

    def ratio(n: int) -> mpq:
        return mpq(n + 2, n + 1) ** k * rho

    total = mpq(0)
    n = N
    term = b(n)
    while ratio(n) >= 1:
        total += term
        term *= ratio(n)
        n += 1
    return total + term / (1 - ratio(n))


def terms_needed(formula: RamanujanFormula, tolerance: Any) -> int:
    """Smallest N with tail_bound(formula, N) < tolerance."""
    tolerance = to_rational(tolerance)
    if tolerance <= 0:
        raise ParameterError(f"tolerance must be positive, got {tolerance}")
    if tail_bound(formula, 0) < tolerance:
        return 0
    hi = 1
    while tail_bound(formula, hi) >= tolerance:
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_bound(formula, mid) < tolerance:
            hi = mid
        else:
            lo = mid
    return hi


# =============================================================================
# Evaluation
# =============================================================================

Strategy = Literal["naive", "binary-split"]


def terms_for_digits(formula: RamanujanFormula, digits: int, guard_digits: int = GUARD_DIGITS) -> int:
    return terms_needed(formula, mpq(1, mpz(10) ** (digits + guard_digits)))


def eval_formula(
    formula: RamanujanFormula,
    digits: int,
    strategy: Strategy = "binary-split",
    threads: int = 1,
    guard_digits: int = GUARD_DIGITS,
    guard_bits: int = GUARD_BITS,
    terms: Optional[int] = None,
) -> BigFloat:
    """
    The series value with error bound (tail + one rounding) below
    10^-(digits + guard_digits). ``terms`` overrides the term count chosen
    from the tail bound.
    """
    if digits < 1:
        raise ParameterError(f"digits must be positive, got {digits}")
    N = terms if terms is not None else terms_for_digits(formula, digits, guard_digits)
    tail = tail_bound(formula, N)
    precision = precision_for_digits(digits, guard_digits, guard_bits) + N.bit_length()

    if strategy == "naive":
        exact = naive_sum(formula, N)
    elif strategy == "binary-split":
        exact = partial_sum(formula, 0, N, threads)
    else:
        raise ParameterError(f"unknown summation strategy {strategy!r}")

    logger.debug(
        "%s: %d terms, %d bits, tail 1e%s",
        formula.name or formula.kernel.value, N, precision, decimal_exponent(tail),
    )
    return BigFloat.from_rational(exact, precision, error=tail)


def _arctan_inverse(k: int, precision: int) -> tuple[mpz, int]:
    """
    atan(1/k) * 2^precision by the alternating series on scaled integers.

    Returns (value, error in ulps). Each floor loses less than one ulp and the
    omitted tail is smaller than the first dropped term, itself below one ulp.
    """
    power = (mpz(1) << precision) // k
    k2 = k * k
    total = mpz(0)
    j = 0
    while power:
        term = power // (2 * j + 1)
        total += -term if j % 2 else term
        power //= k2
        j += 1
    return total, j + 1


_MACHIN_FORMULAS: dict[str, tuple[tuple[int, int], ...]] = {
    "machin": ((16, 5), (-4, 239)),
    "gauss": ((48, 18), (32, 57), (-20, 239)),
}


def pi_reference(
    digits: int,
    formula: str = "machin",
    guard_digits: int = GUARD_DIGITS,
    guard_bits: int = GUARD_BITS,
) -> BigFloat:
    """pi from an arctangent decomposition; shares nothing with the series above."""
    if digits < 1:
        raise ParameterError(f"digits must be positive, got {digits}")
    if formula not in _MACHIN_FORMULAS:
        raise ParameterError(f"unknown arctangent formula {formula!r}")
    precision = precision_for_digits(digits, guard_digits, guard_bits)
    mantissa = mpz(0)
    ulps = 0
    for coeff, k in _MACHIN_FORMULAS[formula]:
        value, err = _arctan_inverse(k, precision)
        mantissa += coeff * value
        ulps += abs(coeff) * err
    return BigFloat(mantissa, precision, mpq(ulps, mpz(1) << precision))


def claimed_value(
    formula: RamanujanFormula,
    digits: int,
    guard_digits: int = GUARD_DIGITS,
    guard_bits: int = GUARD_BITS,
) -> BigFloat:
    """The right-hand side assembled from pi_reference and sqrt_int."""
    claimed = formula.claimed
    pi = pi_reference(digits, guard_digits=guard_digits, guard_bits=guard_bits)
    total_digits = digits + guard_digits
    numerator = sqrt_int(claimed.d, total_digits, guard_bits) * claimed.S
    denominator = pi if claimed.pi_power == 1 else pi * pi
    if claimed.extra_sqrt_denom:
        denominator = denominator * sqrt_int(claimed.extra_sqrt_denom, total_digits, guard_bits)
    return numerator / denominator


class NumericCheckReport(BaseModel):
    formula: str
    digits: int
    terms: int
    residual_bound_exponent: Optional[int]
    passed: bool
    conjectural: bool = False


def check_identity_numeric(
    formula: RamanujanFormula,
    digits: int,
    threads: int = 1,
    guard_digits: int = GUARD_DIGITS,
    guard_bits: int = GUARD_BITS,
) -> NumericCheckReport:
    """Rigorous bound on |series - claimed|; passes iff it is below 10^(5 - digits)."""
    if digits < 10:
        raise ParameterError(f"numeric identity checks need digits >= 10, got {digits}")
    terms = terms_for_digits(formula, digits, guard_digits)
    series = eval_formula(
        formula, digits, threads=threads, guard_digits=guard_digits, guard_bits=guard_bits, terms=terms
    )
    claimed = claimed_value(formula, digits, guard_digits, guard_bits)
    bound = series.distance_bound(claimed)
    passed = bound < mpq(mpz(10) ** 5, mpz(10) ** digits)
    exponent = decimal_exponent(bound)
    name = formula.name or formula.kernel.value
    if passed:
        logger.info("%s: residual < 1e%s at %d digits", name, exponent, digits)
    else:
        logger.warning("%s: residual bound 1e%s exceeds 1e%d", name, exponent, 5 - digits)
    return NumericCheckReport(
        formula=name,
        digits=digits,
        terms=terms,
        residual_bound_exponent=exponent,
        passed=passed,
        conjectural=formula.conjectural,
    )


def extract_pi(
    formula: RamanujanFormula,
    digits: int,
    threads: int = 1,
    guard_digits: int = GUARD_DIGITS,
    guard_bits: int = GUARD_BITS,
) -> BigFloat:
    """pi from the series alone: pi^k = S sqrt(d) / (sqrt(e) * sum)."""
    claimed = formula.claimed
    series = eval_formula(formula, digits, threads=threads, guard_digits=guard_digits, guard_bits=guard_bits)
    total_digits = digits + guard_digits
    numerator = sqrt_int(claimed.d, total_digits, guard_bits) * claimed.S
    if claimed.extra_sqrt_denom:
        series = series * sqrt_int(claimed.extra_sqrt_denom, total_digits, guard_bits)
    power = numerator / series
    return power.sqrt() if claimed.pi_power == 2 else power
