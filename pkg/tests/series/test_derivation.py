"""
Theta-operator bookkeeping from a 5F4 series to an integral U_n series
"""
import pytest
from gmpy2 import mpq

from hypergeo.arith import AlgebraicValue
from hypergeo.catalog import get_formula
from hypergeo.errors import HypothesisError, ParameterError
from hypergeo.derivation import (
    GuilleraInput,
    derive_ramanujan,
    normalize_quadratic,
    theta_coefficients,
)
from hypergeo.hyper_eval import extract_pi

__report_module__ = "derivation"


def test_theta_coefficients_at_minus_quarter(record):
    theta = theta_coefficients((20, 8, 1), mpq(-1, 4))
    record("q2 = 36/5", theta.q2 == mpq(36, 5), theta.q2)
    record("q1 = -4", theta.q1 == -4, theta.q1)
    record("q0 = -6/5", theta.q0 == mpq(-6, 5), theta.q0)
    record("prefactor (2/5) sqrt 5", theta.prefactor == AlgebraicValue(r=mpq(2, 5), d=5), str(theta.prefactor))
    record("x = 16/25", theta.x == mpq(16, 25), theta.x)


def test_theta_coefficients_at_minus_1024th(record):
    z = mpq(-1, 1024)
    theta = theta_coefficients((820, 180, 13), z)
    record("x = 2^12 / 1025^2", theta.x == mpq(4096, 1025 ** 2), theta.x)
    record("q2 = 820 * 1023^2 / 1025^2", theta.q2 == mpq(820 * 1023 ** 2, 1025 ** 2), theta.q2)


def test_identity_operator_passes_through(record):
    z = mpq(-1, 4)
    theta = theta_coefficients((0, 0, 1), z)
    record("(0, 0, 1)", (theta.q2, theta.q1, theta.q0) == (0, 0, 1))
    record("prefactor (1-z)^(-1/2)", theta.prefactor == AlgebraicValue.sqrt_of(1 / (1 - z)))
    derived = derive_ramanujan(GuilleraInput(alpha=(0, 0, 1), z0=z, rhs=8))
    record("quadratic (0, 0, 1)", (derived.A, derived.B, derived.C) == (0, 0, 1))
    record("M = 6400", derived.M == 6400, derived.M)
    # sqrt(1 - z0) * R = (sqrt 5 / 2) * 8
    record("value 4 sqrt 5", derived.value == AlgebraicValue(r=4, d=5), str(derived.value))


def test_first_integral_series(record):
    derived = derive_ramanujan(GuilleraInput(alpha=(20, 8, 1), z0="-1/4", rhs=8))
    record("(A, B, C) = (18, -10, -3)", (derived.A, derived.B, derived.C) == (18, -10, -3))
    record("M = 2^8 5^2", derived.M == 6400, derived.M)
    record("10 sqrt 5", (derived.S, derived.d) == (10, 5), str(derived.value))
    record("render", derived.render() == "18n^2-10n-3 / 6400^n = 10*sqrt(5)/pi^2", derived.render())


def test_second_integral_series(record):
    derived = derive_ramanujan(GuilleraInput(alpha=(820, 180, 13), z0=mpq(-1, 2 ** 10), rhs=128))
    record("(A, B, C)", (derived.A, derived.B, derived.C) == (1046529, 227104, 16032))
    record("M = 5^4 41^2", derived.M == 1050625 and derived.M.denominator == 1, derived.M)
    record("25625 sqrt 41", (derived.S, derived.d) == (25625, 41), str(derived.value))
    record(
        "render",
        derived.render() == "1046529n^2+227104n+16032 / 1050625^n = 25625*sqrt(41)/pi^2",
        derived.render(),
    )
    formula = derived.to_formula("derived")
    record("becomes an fr_times_U formula", formula.kernel.value == "fr_times_U" and formula.x == mpq(1, 1050625))


def test_normalize_quadratic(record):
    ints, scale = normalize_quadratic((mpq(36, 5), -4, mpq(-6, 5)))
    record("coprime integers", ints == (18, -10, -3), ints)
    record("scale 5/2", scale == mpq(5, 2), scale)
    ints, scale = normalize_quadratic((0, mpq(-2, 3), mpq(4, 9)))
    record("leading nonzero made positive", ints == (0, 3, -2) and scale == mpq(-9, 2), (ints, scale))
    with pytest.raises(ParameterError):
        normalize_quadratic((0, 0, 0))


def test_hypotheses(record):
    with pytest.raises(HypothesisError) as info:
        GuilleraInput(alpha=(20, 8, 1), z0=1, rhs=8)
    record("z = 1 names |z| < 1", info.value.hypothesis == "|z| < 1", str(info.value))
    with pytest.raises(HypothesisError) as info:
        GuilleraInput(alpha=(20, 8, 1), z0=mpq(1, 2), rhs=8)
    record("z = 1/2 violates |4z/(1-z)^2| < 1", info.value.hypothesis == "|4z/(1-z)^2| < 1", str(info.value))
    with pytest.raises(HypothesisError):
        theta_coefficients((1, 0, 0), 1)
    with pytest.raises(HypothesisError):
        theta_coefficients((1, 0, 0), 3)
    with pytest.raises(ParameterError):
        derive_ramanujan(GuilleraInput(alpha=(1, 0, 0), z0=0, rhs=1))
    record("hypothesis violations raised", True)


def test_normalize_quadratic_is_idempotent(record):
    for triple in ((18, -10, -3), (1046529, 227104, 16032), (0, 4, 1), (0, 0, 1)):
        ints, scale = normalize_quadratic(triple)
        record(f"normalize{triple} fixed", ints == triple and scale == 1, (ints, scale))
        again, scale_again = normalize_quadratic(ints)
        record(f"normalize twice {triple}", again == ints and scale_again == 1)


def test_positive_z0_names_the_base_sign(record):
    source = GuilleraInput(alpha=(20, 8, 1), z0=mpq(1, 10), rhs=8)
    with pytest.raises(ParameterError) as info:
        derive_ramanujan(source)
    message = str(info.value)
    record("z0 = 1/10 rejected before M is formed", "positive base" in message and "z0 < 0" in message, message)


def test_derived_series_gives_the_same_pi(record):
    digits = 40
    derived = derive_ramanujan(GuilleraInput(alpha=(20, 8, 1), z0=mpq(-1, 4), rhs=8)).to_formula("derived")
    from_derived = extract_pi(derived, digits)
    from_source = extract_pi(get_formula("eq1"), digits)
    gap = from_derived.distance_bound(from_source)
    record("pi from derived series = pi from eq1", gap < mpq(1, 10 ** (digits - 5)), repr(from_derived))
