"""
From a 5F4 series for 1/pi^2 to an integral U_n series.

Write F(z) = sum (1/2)_n^5/n!^5 z^n = (1-z)^(-1/2) sum C_n w^n with
w = -4z/(1-z)^2 and C_n = u_n (1/4)_n (3/4)_n / n!^2. With theta = z d/dz,

    theta F   = (1-z)^(-1/2) sum C_n (n (1+z)/(1-z) + z/(2(1-z))) w^n
    theta^2 F = (1-z)^(-1/2) sum C_n (n^2 (1+z)^2/(1-z)^2 + n z(3+z)/(1-z)^2
                                      + z(2+z)/(4(1-z)^2)) w^n

so a known evaluation sum (1/2)_n^5/n!^5 (a2 n^2 + a1 n + a0) z0^n = R/pi^2
becomes, after substituting z = z0 and absorbing 2^(-6n) twice into the base,
sum U_n (4n)!/(n!^2 (2n)!) (A n^2 + B n + C) / M^n = S sqrt(d) / pi^2.
"""

from __future__ import annotations

import logging
from typing import Any

import gmpy2
from gmpy2 import mpq
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .arith import AlgebraicValue, RationalField, to_rational
from .errors import HypothesisError, ParameterError
from .hyper_eval import ClaimedValue, Kernel, RamanujanFormula, format_quadratic

logger = logging.getLogger(__name__)


class ThetaCoefficients(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    q2: RationalField
    q1: RationalField
    q0: RationalField
    prefactor: AlgebraicValue
    x: RationalField


def theta_coefficients(alpha: tuple[int, int, int], z0: Any) -> ThetaCoefficients:
    """Collect a2*theta^2 + a1*theta + a0 into a quadratic in n at z = z0."""
    z = to_rational(z0)
    if z == 1:
        raise HypothesisError("z != 1", "the weights have a pole at z = 1")
    one_minus = 1 - z
    if one_minus < 0:
        raise HypothesisError("|z| < 1", f"(1 - z)^(-1/2) is not real at z = {z}")
    a2, a1, a0 = (int(a) for a in alpha)
    sq = one_minus * one_minus

    q2 = a2 * (1 + z) ** 2 / sq
    q1 = a2 * z * (3 + z) / sq + a1 * (1 + z) / one_minus
    q0 = a2 * z * (2 + z) / (4 * sq) + a1 * z / (2 * one_minus) + a0

    prefactor = AlgebraicValue.sqrt_of(1 / one_minus)
    return ThetaCoefficients(q2=q2, q1=q1, q0=q0, prefactor=prefactor, x=-4 * z / sq)


class GuilleraInput(BaseModel):
    """sum (1/2)_n^5/n!^5 (a2 n^2 + a1 n + a0) z0^n = rhs / pi^2."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: tuple[int, int, int]
    z0: RationalField
    rhs: RationalField

    @model_validator(mode="after")
    def _transformation_hypotheses(self) -> "GuilleraInput":
        z = self.z0
        if abs(z) >= 1:
            raise HypothesisError("|z| < 1", f"z = {z}")
        w = 4 * z / (1 - z) ** 2
        if abs(w) >= 1:
            raise HypothesisError("|4z/(1-z)^2| < 1", f"4z/(1-z)^2 = {w}")
        return self


class DerivedFormula(BaseModel):
    """sum U_n (4n)!/(n!^2 (2n)!) (A n^2 + B n + C) / M^n = S sqrt(d) / pi^2."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    A: int
    B: int
    C: int
    M: RationalField
    value: AlgebraicValue

    @field_validator("M")
    @classmethod
    def _positive_base(cls, value: mpq) -> mpq:
        if value <= 0:
            raise ParameterError(f"base M must be positive, got {value}")
        return value

    @property
    def S(self) -> mpq:
        return self.value.r

    @property
    def d(self) -> int:
        return self.value.d

    def to_formula(self, name: str = "") -> RamanujanFormula:
        return RamanujanFormula(
            name=name,
            kernel=Kernel.FR_TIMES_U,
            quadratic=(self.A, self.B, self.C),
            x=1 / self.M,
            claimed=ClaimedValue(S=self.S, d=self.d),
            source="derived",
        )

    def render(self) -> str:
        return f"{format_quadratic(self.A, self.B, self.C)} / {self.M}^n = {self.value}/pi^2"


def normalize_quadratic(q: tuple[Any, Any, Any]) -> tuple[tuple[int, int, int], mpq]:
    """
    Scale rational (q2, q1, q0) to coprime integers with the first nonzero
    entry positive. Returns the integers and the scale factor k, (A,B,C) = k*q.
    """
    q = tuple(to_rational(c) for c in q)
    if not any(q):
        raise ParameterError("quadratic is identically zero")
    lcm = 1
    for c in q:
        lcm = gmpy2.lcm(lcm, c.denominator)
    ints = [int(c * lcm) for c in q]
    g = 0
    for c in ints:
        g = gmpy2.gcd(g, c)
    scale = mpq(lcm, int(g))
    leading = next(c for c in ints if c != 0)
    if leading < 0:
        scale = -scale
    a, b, c = (int(v * scale) for v in q)
    return (a, b, c), scale


def derive_ramanujan(source: GuilleraInput) -> DerivedFormula:
    if source.z0 == 0:
        raise ParameterError("z0 = 0 leaves no series to transform")
    if source.z0 > 0:
        # x = -4 z0/(1-z0)^2 < 0 would give a negative base M = 4096/x
        raise ParameterError(
            f"z0 = {source.z0} is positive; derived series are written with a positive base "
            "M = 4096 (1-z0)^2 / (-4 z0), which needs z0 < 0"
        )
    theta = theta_coefficients(source.alpha, source.z0)
    (a, b, c), scale = normalize_quadratic((theta.q2, theta.q1, theta.q0))
    M = 4096 / theta.x
    # sum C_n (q2 n^2 + q1 n + q0) x^n = (1-z0)^(1/2) R / pi^2
    value = theta.prefactor.inverse() * (source.rhs * scale)
    derived = DerivedFormula(A=a, B=b, C=c, M=M, value=value)
    logger.info("derived %s from alpha=%s z0=%s", derived.render(), source.alpha, source.z0)
    return derived
