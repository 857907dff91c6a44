"""
Coefficientwise verification of the quadratic transformations.

Each identity is turned into two (or three) independently built Series and
compared to a fixed truncation order. Random parameters come from a seeded
numpy generator with small denominators, retrying on pole configurations.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Any, Callable, Optional, Sequence

import numpy as np
from gmpy2 import mpq
from pydantic import BaseModel, ConfigDict

from .arith import RationalField, is_nonpositive_integer, pochhammer, to_rational
from .errors import ParameterError
from .power_series import (
    HypergeometricSpec,
    Series,
    hypergeometric_series,
    one_minus_z,
    ps_mul,
    ps_pow_rational,
    ps_theta,
    quad_map,
)

logger = logging.getLogger(__name__)

HALF = mpq(1, 2)


class Identity(str, Enum):
    GAUSS = "gauss"
    WHIPPLE = "whipple"
    THEOREM1 = "theorem1"
    ORR = "orr"
    REDUCTION = "reduction"
    THEOREM2 = "theorem2"
    EQ10 = "eq10"


PARAMETER_COUNT = {
    Identity.GAUSS: 2,
    Identity.WHIPPLE: 3,
    Identity.THEOREM1: 5,
    Identity.ORR: 5,
    Identity.REDUCTION: 5,
    Identity.THEOREM2: 0,
    Identity.EQ10: 0,
}


class TransformReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    identity: Identity
    params: tuple[RationalField, ...]
    order: int
    equal: bool
    first_mismatch: Optional[int] = None


# =============================================================================
# Parameter validation
# =============================================================================

def _require_lower(name: str, value: mpq) -> None:
    if is_nonpositive_integer(value):
        raise ParameterError(f"lower parameter {name} = {value} is zero or a negative integer")


def _check_params(identity: Identity, params: Sequence[mpq]) -> None:
    expected = PARAMETER_COUNT[identity]
    if len(params) != expected:
        raise ParameterError(f"{identity.value} takes {expected} parameters, got {len(params)}")
    if identity is Identity.GAUSS:
        a, b = params
        _require_lower("1+a-b", 1 + a - b)
    elif identity is Identity.WHIPPLE:
        a, b, c = params
        _require_lower("1+a-b", 1 + a - b)
        _require_lower("1+a-c", 1 + a - c)
    elif identity in (Identity.THEOREM1, Identity.ORR, Identity.REDUCTION):
        a, b, c, d, e = params
        for name, value in (("1+a-b", 1 + a - b), ("1+a-c", 1 + a - c),
                            ("1+a-d", 1 + a - d), ("1+a-e", 1 + a - e)):
            _require_lower(name, value)


# =============================================================================
# Side builders
# =============================================================================

def _prefactor(a: mpq, order: int) -> Series:
    """(1 - z)^(-a)"""
    return ps_pow_rational(one_minus_z(order), -a)


def _quadratic_side(a: mpq, outer: Sequence[mpq], order: int) -> Series:
    """(1-z)^(-a) * sum outer_n w^n with w = -4z/(1-z)^2."""
    return ps_mul(_prefactor(a, order), Series(outer, order)(quad_map(order)))


def _outer_weights(a: mpq, b: mpq, c: mpq, order: int) -> list[mpq]:
    """(a/2)_n (1/2 + a/2)_n / ((1+a-b)_n (1+a-c)_n), by the term ratio."""
    weights = [mpq(1)]
    for n in range(order - 1):
        ratio = (a / 2 + n) * (HALF + a / 2 + n) / ((1 + a - b + n) * (1 + a - c + n))
        weights.append(weights[-1] * ratio)
    return weights


def _sides_gauss(params: Sequence[mpq], order: int) -> list[Series]:
    a, b = params
    lhs = hypergeometric_series(HypergeometricSpec.of([a, b], [1 + a - b]), order)
    inner = hypergeometric_series(HypergeometricSpec.of([a / 2, HALF + a / 2 - b], [1 + a - b]), order)
    return [lhs, ps_mul(_prefactor(a, order), inner(quad_map(order)))]


def _sides_whipple(params: Sequence[mpq], order: int) -> list[Series]:
    a, b, c = params
    lower = [1 + a - b, 1 + a - c]
    lhs = hypergeometric_series(HypergeometricSpec.of([a, b, c], lower), order)
    inner = hypergeometric_series(
        HypergeometricSpec.of([a / 2, HALF + a / 2, 1 + a - b - c], lower), order
    )
    return [lhs, ps_mul(_prefactor(a, order), inner(quad_map(order)))]


def _five_f_four(params: Sequence[mpq], order: int) -> Series:
    a, b, c, d, e = params
    spec = HypergeometricSpec.of([a, b, c, d, e], [1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e])
    return hypergeometric_series(spec, order)


def _sides_theorem1(params: Sequence[mpq], order: int) -> list[Series]:
    """Right side with the explicit inner nu-sum, one finite convolution per n."""
    a, b, c, d, e = params
    g = [mpq(1)]
    h = [mpq(1)]
    for nu in range(order - 1):
        g.append(g[-1] * (b + nu) * (c + nu) * (1 + a - d - e + nu)
                 / ((nu + 1) * (1 + a - d + nu) * (1 + a - e + nu)))
        h.append(h[-1] * (1 + a - b - c + nu) / (nu + 1))
    outer = _outer_weights(a, b, c, order)
    coeffs = [outer[n] * sum((g[nu] * h[n - nu] for nu in range(n + 1)), mpq(0))
              for n in range(order)]
    return [_five_f_four(params, order), _quadratic_side(a, coeffs, order)]


def orr_coefficients(params: Sequence[mpq], order: int) -> Series:
    """f_n from (1-z)^(b+c-a-1) * 3F2(b, c, 1+a-d-e; 1+a-d, 1+a-e; z)."""
    a, b, c, d, e = params
    spec = HypergeometricSpec.of([b, c, 1 + a - d - e], [1 + a - d, 1 + a - e])
    return ps_mul(ps_pow_rational(one_minus_z(order), b + c - a - 1), hypergeometric_series(spec, order))


def _sides_orr(params: Sequence[mpq], order: int) -> list[Series]:
    a, b, c, d, e = params
    f = orr_coefficients(params, order)
    outer = _outer_weights(a, b, c, order)
    coeffs = [f[n] * outer[n] for n in range(order)]
    return [_five_f_four(params, order), _quadratic_side(a, coeffs, order)]


def _sides_reduction(params: Sequence[mpq], order: int) -> list[Series]:
    """The 5F4 as a nu-sum of 3F2 series at z, before the quadratic step."""
    a, b, c, d, e = params
    total = [mpq(0)] * order
    weight = mpq(1)
    for nu in range(order):
        if nu:
            k = nu - 1
            weight *= ((a + 2 * k) * (a + 2 * k + 1) * (b + k) * (c + k) * (1 + a - d - e + k)
                       / (nu * (1 + a - b + k) * (1 + a - c + k) * (1 + a - d + k) * (1 + a - e + k)))
            weight = -weight
        if weight == 0:
            break
        spec = HypergeometricSpec.of(
            [a + 2 * nu, b + nu, c + nu], [1 + a - b + nu, 1 + a - c + nu]
        )
        inner = hypergeometric_series(spec, order - nu)
        for m in range(order - nu):
            total[nu + m] += weight * inner[m]
    return [_five_f_four(params, order), Series(total, order)]


def _sides_theorem2(params: Sequence[mpq], order: int) -> list[Series]:
    from .sequences import u_seq

    lhs = hypergeometric_series(HypergeometricSpec.of([HALF] * 5, [1] * 4), order)
    u = u_seq(order - 1, "convolution")
    quarter = [mpq(1)]
    for n in range(order - 1):
        quarter.append(quarter[-1] * (mpq(1, 4) + n) * (mpq(3, 4) + n) / (n + 1) ** 2)
    coeffs = [u[n] * quarter[n] for n in range(order)]
    return [lhs, _quadratic_side(HALF, coeffs, order)]


def _sides_eq10(params: Sequence[mpq], order: int) -> list[Series]:
    from .sequences import u_seq

    u = u_seq(order - 1, "convolution")
    third = [mpq(1)]
    for n in range(order - 1):
        third.append(third[-1] * (mpq(1, 3) + n) * (mpq(2, 3) + n) / (n + 1) ** 2)
    first = Series((u[n] * third[n] for n in range(order)), order)
    f32 = hypergeometric_series(HypergeometricSpec.of([mpq(1, 6), HALF, mpq(5, 6)], [1, 1]), order)
    f21 = hypergeometric_series(HypergeometricSpec.of([mpq(1, 12), mpq(5, 12)], [1]), order)
    f21_sq = ps_mul(f21, f21)
    return [first, ps_mul(f32, f32), ps_mul(f21_sq, f21_sq)]


_BUILDERS: dict[Identity, Callable[[Sequence[mpq], int], list[Series]]] = {
    Identity.GAUSS: _sides_gauss,
    Identity.WHIPPLE: _sides_whipple,
    Identity.THEOREM1: _sides_theorem1,
    Identity.ORR: _sides_orr,
    Identity.REDUCTION: _sides_reduction,
    Identity.THEOREM2: _sides_theorem2,
    Identity.EQ10: _sides_eq10,
}


def transform_sides(identity: Any, params: Sequence[Any], order: int) -> list[Series]:
    """Build every expression of an identity as a Series of the given order."""
    identity = Identity(identity)
    params = [to_rational(p) for p in params]
    if order < 1:
        raise ParameterError(f"series order must be positive, got {order}")
    _check_params(identity, params)
    return _BUILDERS[identity](params, order)


def verify_transform(
    identity: Any,
    params: Sequence[Any],
    order: int,
    perturb_at: Optional[int] = None,
) -> TransformReport:
    """
    Compare all sides of an identity coefficientwise up to ``order``.

    ``perturb_at`` adds 1 to the last side's coefficient at that index, which
    must then be reported as the first mismatch.
    """
    identity = Identity(identity)
    params = [to_rational(p) for p in params]
    sides = transform_sides(identity, params, order)
    if perturb_at is not None:
        if not 0 <= perturb_at < order:
            raise ParameterError(f"perturbation index {perturb_at} outside order {order}")
        coeffs = list(sides[-1].coefficients)
        coeffs[perturb_at] += 1
        sides[-1] = Series(coeffs, order)

    mismatches = [m for m in (sides[0].first_mismatch(s) for s in sides[1:]) if m is not None]
    first = min(mismatches) if mismatches else None
    report = TransformReport(
        identity=identity, params=tuple(params), order=order,
        equal=first is None, first_mismatch=first,
    )
    if report.equal:
        logger.debug("%s%s holds to order %d", identity.value, tuple(str(p) for p in params), order)
    else:
        logger.warning("%s%s fails at z^%d", identity.value, tuple(str(p) for p in params), first)
    return report


# =============================================================================
# Pfaff-Saalschutz
# =============================================================================

class SaalschutzForms(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    terminating_sum: RationalField
    closed_form: RationalField
    first_form: RationalField

    @property
    def both_forms(self) -> bool:
        return self.first_form == self.closed_form

    @property
    def holds(self) -> bool:
        return self.terminating_sum == self.closed_form and self.both_forms


def pfaff_saalschutz_forms(a: Any, d: Any, e: Any, n: int) -> SaalschutzForms:
    """
    The balanced terminating 3F2(-n, a+n, 1+a-d-e; 1+a-d, 1+a-e; 1) next to
    both closed forms of its evaluation.
    """
    a, d, e = to_rational(a), to_rational(d), to_rational(e)
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}")
    den_d = pochhammer(1 + a - d, n)
    den_e = pochhammer(1 + a - e, n)
    if den_d == 0 or den_e == 0:
        raise ParameterError(f"(1+a-d)_n or (1+a-e)_n vanishes for a={a}, d={d}, e={e}, n={n}")

    total = mpq(0)
    term = mpq(1)
    for k in range(n + 1):
        total += term
        term = term * (-n + k) * (a + n + k) * (1 + a - d - e + k) / ((k + 1) * (1 + a - d + k) * (1 + a - e + k))

    closed = pochhammer(d, n) * pochhammer(e, n) / (den_d * den_e)
    first = pochhammer(-d - n + 1, n) * pochhammer(e, n) / (den_d * pochhammer(e - a - n, n))
    return SaalschutzForms(terminating_sum=total, closed_form=closed, first_form=first)


def pfaff_saalschutz_check(a: Any, d: Any, e: Any, n: int) -> bool:
    forms = pfaff_saalschutz_forms(a, d, e, n)
    ok = forms.holds
    if not ok:
        logger.warning("Pfaff-Saalschutz mismatch at a=%s d=%s e=%s n=%d", a, d, e, n)
    return ok


# =============================================================================
# Theta-operator weights
# =============================================================================

class ThetaWeightsReport(BaseModel):
    order: int
    first_order_equal: bool
    second_order_equal: bool


def _coefficient_scaled(c: Series, power: int) -> Series:
    return Series((n ** power * c[n] for n in range(c.order)), c.order)


def verify_theta_weights(order: int, seed: int = 0, max_denominator: int = 12) -> ThetaWeightsReport:
    """
    For random rational C_n, check that theta and theta^2 of
    F = (1-z)^(-1/2) sum C_n w^n equal the weighted sums

        (1-z)^(-1/2) sum C_n (n (1+z)/(1-z) + z/(2(1-z))) w^n,
        (1-z)^(-1/2) sum C_n (n^2 (1+z)^2/(1-z)^2 + n z(3+z)/(1-z)^2
                              + z(2+z)/(4(1-z)^2)) w^n.
    """
    rng = np.random.default_rng(seed)
    c = Series((random_rational(rng, max_denominator) for _ in range(order)), order)
    w = quad_map(order)
    z = Series.variable(order)
    pre = ps_pow_rational(one_minus_z(order), -HALF)
    inv = ps_pow_rational(one_minus_z(order), -1)
    inv2 = ps_mul(inv, inv)

    c0, c1, c2 = c(w), _coefficient_scaled(c, 1)(w), _coefficient_scaled(c, 2)(w)
    f = ps_mul(pre, c0)

    w1 = ps_mul(1 + z, inv)
    w0 = ps_mul(z * HALF, inv)
    first = ps_mul(pre, ps_mul(w1, c1) + ps_mul(w0, c0))

    v2 = ps_mul(ps_mul(1 + z, 1 + z), inv2)
    v1 = ps_mul(ps_mul(z, 3 + z), inv2)
    v0 = ps_mul(ps_mul(z, 2 + z) * mpq(1, 4), inv2)
    second = ps_mul(pre, ps_mul(v2, c2) + ps_mul(v1, c1) + ps_mul(v0, c0))

    theta_f = ps_theta(f)
    return ThetaWeightsReport(
        order=order,
        first_order_equal=theta_f == first,
        second_order_equal=ps_theta(theta_f) == second,
    )


# =============================================================================
# Random parameters
# =============================================================================

def random_rational(rng: np.random.Generator, max_denominator: int = 12, bound: int = 3) -> mpq:
    """Uniform-ish rational in [-bound, bound] with denominator <= max_denominator."""
    den = int(rng.integers(1, max_denominator + 1))
    num = int(rng.integers(-bound * den, bound * den + 1))
    return mpq(num, den)


def sample_parameters(
    identity: Any,
    count: int,
    seed: int,
    max_denominator: int = 12,
    max_attempts: int = 1000,
) -> list[tuple[mpq, ...]]:
    """``count`` valid parameter tuples for ``identity``, reproducible from ``seed``."""
    identity = Identity(identity)
    rng = np.random.default_rng(seed)
    width = PARAMETER_COUNT[identity]
    samples: list[tuple[mpq, ...]] = []
    attempts = 0
    while len(samples) < count:
        attempts += 1
        if attempts > max_attempts:
            raise ParameterError(f"could not sample {count} valid {identity.value} parameter sets")
        params = tuple(random_rational(rng, max_denominator) for _ in range(width))
        try:
            _check_params(identity, params)
        except ParameterError:
            continue
        samples.append(params)
    return samples


def sample_saalschutz(
    count: int,
    seed: int,
    max_n: int = 10,
    max_denominator: int = 12,
    max_attempts: int = 1000,
) -> list[tuple[mpq, mpq, mpq, int]]:
    """Random (a, d, e, n) with (1+a-d)_n and (1+a-e)_n nonzero."""
    rng = np.random.default_rng(seed)
    samples: list[tuple[mpq, mpq, mpq, int]] = []
    attempts = 0
    while len(samples) < count:
        attempts += 1
        if attempts > max_attempts:
            raise ParameterError(f"could not sample {count} valid Pfaff-Saalschutz parameter sets")
        a, d, e = (random_rational(rng, max_denominator) for _ in range(3))
        n = int(rng.integers(0, max_n + 1))
        if pochhammer(1 + a - d, n) == 0 or pochhammer(1 + a - e, n) == 0:
            continue
        samples.append((a, d, e, n))
    return samples
