"""
Truncated formal power series over the rationals.

A Series of order N stores the coefficients of z^0 .. z^(N-1). Every binary
operation truncates to the smaller order of its operands, so precision is
never silently inflated.
"""

from __future__ import annotations

import logging
from typing import Any, Iterable, Iterator, Optional, Sequence

from gmpy2 import mpq
from pydantic import BaseModel, ConfigDict, model_validator

from .arith import Rational, RationalField, is_nonpositive_integer, to_rational
from .errors import ParameterError

logger = logging.getLogger(__name__)


class Series:
    """Immutable truncated power series with Rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Any], order: Optional[int] = None):
        coeffs = [to_rational(c) for c in coefficients]
        if order is None:
            order = len(coeffs)
        if order < 1:
            raise ParameterError(f"series order must be positive, got {order}")
        if len(coeffs) < order:
            coeffs.extend(mpq(0) for _ in range(order - len(coeffs)))
        self._coeffs: tuple[mpq, ...] = tuple(coeffs[:order])

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value: Any, order: int) -> "Series":
        return cls([value], order)

    @classmethod
    def monomial(cls, power: int, order: int, coefficient: Any = 1) -> "Series":
        """coefficient * z^power (zero if power >= order)."""
        coeffs = [0] * order
        if power < order:
            coeffs[power] = coefficient
        return cls(coeffs, order)

    @classmethod
    def variable(cls, order: int) -> "Series":
        return cls.monomial(1, order)

    @classmethod
    def geometric(cls, order: int) -> "Series":
        """1/(1-z) = sum z^n."""
        return cls([1] * order, order)

    # -- access -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._coeffs)

    @property
    def coefficients(self) -> tuple[mpq, ...]:
        return self._coeffs

    def __getitem__(self, n: int) -> mpq:
        return self._coeffs[n]

    def __iter__(self) -> Iterator[mpq]:
        return iter(self._coeffs)

    def truncate(self, order: int) -> "Series":
        return Series(self._coeffs[:order], order)

    # -- comparison -------------------------------------------------------

    def first_mismatch(self, other: "Series") -> Optional[int]:
        """Index of the first differing coefficient up to the common order."""
        for n in range(min(self.order, other.order)):
            if self._coeffs[n] != other._coeffs[n]:
                return n
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self._coeffs[:6])
        more = ", ..." if self.order > 6 else ""
        return f"Series([{shown}{more}], order={self.order})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: Any) -> "Series":
        if isinstance(other, Series):
            return ps_add(self, other)
        return ps_add(self, Series.constant(other, self.order))

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return ps_scale(self, -1)

    def __sub__(self, other: Any) -> "Series":
        if isinstance(other, Series):
            return ps_sub(self, other)
        return ps_sub(self, Series.constant(other, self.order))

    def __rsub__(self, other: Any) -> "Series":
        return ps_sub(Series.constant(other, self.order), self)

    def __mul__(self, other: Any) -> "Series":
        if isinstance(other, Series):
            return ps_mul(self, other)
        return ps_scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, alpha: Any) -> "Series":
        return ps_pow_rational(self, alpha)

    def __call__(self, inner: "Series") -> "Series":
        return ps_compose(self, inner)


def ps_add(a: Series, b: Series) -> Series:
    n = min(a.order, b.order)
    return Series((a[k] + b[k] for k in range(n)), n)


def ps_sub(a: Series, b: Series) -> Series:
    n = min(a.order, b.order)
    return Series((a[k] - b[k] for k in range(n)), n)


def ps_scale(a: Series, factor: Any) -> Series:
    factor = to_rational(factor)
    return Series((factor * c for c in a), a.order)


def ps_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated to min(order(a), order(b))."""
    n = min(a.order, b.order)
    ac, bc = a.coefficients, b.coefficients
    out = [mpq(0)] * n
    for i in range(n):
        ai = ac[i]
        if ai == 0:
            continue
        for j in range(n - i):
            bj = bc[j]
            if bj != 0:
                out[i + j] += ai * bj
    return Series(out, n)


def ps_compose(a: Series, w: Series) -> Series:
    """a(w(z)) up to the common order; w must have zero constant term."""
    if w[0] != 0:
        raise ParameterError(f"inner series must have zero constant term, got {w[0]}")
    n = min(a.order, w.order)
    w = w.truncate(n)
    # Horner in w
    result = Series.constant(a[n - 1], n)
    for k in range(n - 2, -1, -1):
        result = ps_mul(result, w) + a[k]
    return result


def ps_pow_rational(a: Series, alpha: Any) -> Series:
    """
    a^alpha for a rational exponent, a having constant term 1.

    Coefficients come from (a^alpha)' * a = alpha * a' * a^alpha:
        b_n = (1/n) * sum_{k=1..n} ((alpha+1)k - n) a_k b_{n-k}.
    """
    if a[0] != 1:
        raise ParameterError(f"rational power needs constant term 1, got {a[0]}")
    alpha = to_rational(alpha)
    n_max = a.order
    b = [mpq(1)] + [mpq(0)] * (n_max - 1)
    for n in range(1, n_max):
        acc = mpq(0)
        for k in range(1, n + 1):
            ak = a[k]
            if ak != 0:
                acc += ((alpha + 1) * k - n) * ak * b[n - k]
        b[n] = acc / n
    return Series(b, n_max)


def ps_theta(a: Series) -> Series:
    """Euler operator z d/dz: the n-th coefficient is multiplied by n."""
    return Series((n * c for n, c in enumerate(a)), a.order)


def ps_derivative(a: Series) -> Series:
    """d/dz; the result has order one less (at least 1)."""
    if a.order == 1:
        return Series([0], 1)
    return Series((n * a[n] for n in range(1, a.order)), a.order - 1)


def one_minus_z(order: int) -> Series:
    return Series([1, -1], order)


def quad_map(order: int) -> Series:
    """The quadratic-transformation argument -4z/(1-z)^2 = -4 sum n z^n."""
    if order < 1:
        raise ParameterError(f"series order must be positive, got {order}")
    return Series((-4 * n for n in range(order)), order)


class HypergeometricSpec(BaseModel):
    """Upper parameters a_0..a_q and lower parameters b_1..b_q of a q+1Fq."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    upper: tuple[RationalField, ...]
    lower: tuple[RationalField, ...]

    @model_validator(mode="after")
    def _check_parameters(self) -> "HypergeometricSpec":
        if len(self.upper) != len(self.lower) + 1:
            raise ParameterError(
                f"expected q+1 upper and q lower parameters, got {len(self.upper)} and {len(self.lower)}"
            )
        for b in self.lower:
            if is_nonpositive_integer(b):
                raise ParameterError(f"lower parameter {b} is zero or a negative integer")
        return self

    @classmethod
    def of(cls, upper: Sequence[Any], lower: Sequence[Any]) -> "HypergeometricSpec":
        return cls(upper=tuple(upper), lower=tuple(lower))

    def label(self) -> str:
        p, q = len(self.upper), len(self.lower)
        ups = ", ".join(str(a) for a in self.upper)
        lows = ", ".join(str(b) for b in self.lower)
        return f"{p}F{q}({ups}; {lows})"


def hypergeometric_series(spec: HypergeometricSpec, order: int) -> Series:
    """
    Coefficients prod (a_i)_n / (n! prod (b_j)_n), generated by the term ratio
    t_{n+1}/t_n = prod(a_i + n) / ((n+1) prod(b_j + n)).
    """
    if order < 1:
        raise ParameterError(f"series order must be positive, got {order}")
    coeffs: list[Rational] = [mpq(1)]
    term = mpq(1)
    for n in range(order - 1):
        num = mpq(1)
        for a in spec.upper:
            num *= a + n
        den = mpq(n + 1)
        for b in spec.lower:
            den *= b + n
        term = term * num / den
        coeffs.append(term)
    logger.debug("built %s to order %d", spec.label(), order)
    return Series(coeffs, order)
