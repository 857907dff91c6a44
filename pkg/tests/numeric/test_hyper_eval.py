"""
Exact summation, tail bounds and rigorous numeric identity checks
"""
import pytest
from gmpy2 import mpq

from hypergeo.catalog import CATALOG, FORMULA_IDS, get_formula
from hypergeo.errors import ParameterError
from hypergeo.hyper_eval import (
    ClaimedValue,
    Kernel,
    RamanujanFormula,
    binary_split,
    check_identity_numeric,
    claimed_value,
    eval_formula,
    extract_pi,
    format_quadratic,
    naive_sum,
    partial_sum,
    pi_reference,
    tail_bound,
    terms_needed,
)

__report_module__ = "hyper_eval"

DIGITS = 50


def test_format_quadratic(record):
    cases = [((18, -10, -3), "18n^2-10n-3"), ((0, 4, 1), "4n+1"), ((1, 0, -1), "n^2-1"), ((-1, 1, 0), "-n^2+n"), ((0, 0, 0), "0")]
    for args, expected in cases:
        got = format_quadratic(*args)
        record(f"format {args}", got == expected, got)


def test_formula_render(record):
    cases = {
        "eq1": "sum (1/2)_n^5/n!^5*(20n^2+8n+1)*(-1/4)^n = 8/pi^2",
        "thm3-1": "sum U_n*(4n)!/(n!^2(2n)!)*(18n^2-10n-3)*(1/6400)^n = 10*sqrt(5)/pi^2",
    }
    for formula_id, expected in cases.items():
        got = get_formula(formula_id).render()
        record(f"render {formula_id}", got == expected, got)


def test_partial_sums(record):
    formula = get_formula("thm3-1")
    record("[0, 1) = -3", partial_sum(formula, 0, 1) == -3)
    record("[0, 2) = -21/8", partial_sum(formula, 0, 2) == mpq(-21, 8), partial_sum(formula, 0, 2))
    record("empty range", binary_split(formula, 5, 5) == (0, 1))
    for formula_id in FORMULA_IDS:
        formula = get_formula(formula_id)
        whole = partial_sum(formula, 0, 40)
        split = partial_sum(formula, 0, 17) + partial_sum(formula, 17, 40)
        record(f"{formula_id}: [0,17) + [17,40) = [0,40)", whole == split)
    with pytest.raises(ParameterError):
        binary_split(formula, 3, 2)


def test_binary_split_matches_naive_sum(record):
    for formula_id in FORMULA_IDS:
        formula = get_formula(formula_id)
        record(f"{formula_id} over [0, 60)", partial_sum(formula, 0, 60) == naive_sum(formula, 60))


def test_threaded_split_is_identical(record):
    formula = get_formula("thm3-2")
    sequential = binary_split(formula, 0, 120)
    threaded = binary_split(formula, 0, 120, threads=4)
    record("threads=4 gives the same integers", sequential == threaded)
    record("offset range too", binary_split(formula, 30, 120) == binary_split(formula, 30, 120, threads=3))


def test_tail_bounds(record):
    bound = tail_bound(get_formula("thm3-2"), 50)
    record("thm3-2 tail after 50 terms < 1e-100", bound < mpq(1, 10 ** 100), float(bound))
    record("eq1 whole-series bound finite and positive", 0 < tail_bound(get_formula("eq1"), 0))
    n = terms_needed(get_formula("thm3-1"), mpq(1, 10 ** DIGITS))
    record("thm3-1 needs a few hundred terms for 50 digits", 250 <= n <= 400, n)
    record("tail below tolerance at n", tail_bound(get_formula("thm3-1"), n) < mpq(1, 10 ** DIGITS))
    record("but not at n - 1", tail_bound(get_formula("thm3-1"), n - 1) >= mpq(1, 10 ** DIGITS))


def test_tail_bounds_dominate_actual_tails(record):
    for formula_id in FORMULA_IDS:
        formula = get_formula(formula_id)
        for N in (0, 1, 7, 40):
            bound = tail_bound(formula, N)
            worst = max(abs(partial_sum(formula, N, N + k)) for k in (1, 5, 30))
            record(f"{formula_id}: tails after {N} within bound", worst <= bound)


def test_pi_reference(record):
    record("10 digits", pi_reference(10).to_decimal(10) == "3.141592654", pi_reference(10).to_decimal(10))
    record("1 digit", pi_reference(1).to_decimal(1) == "3")
    machin, gauss = pi_reference(DIGITS), pi_reference(DIGITS, formula="gauss")
    record("two arctangent decompositions agree", machin.distance_bound(gauss) < mpq(1, 10 ** (DIGITS - 2)))
    with pytest.raises(ParameterError):
        pi_reference(10, formula="leibniz")


def test_series_values(record):
    value = eval_formula(get_formula("eq1"), 30)
    record("eq1 = 8/pi^2", value.to_decimal(30).startswith("0.810569469138702"), value.to_decimal(30))
    for strategy in ("naive", "binary-split"):
        value = eval_formula(get_formula("thm3-1"), 30, strategy=strategy)
        claimed = claimed_value(get_formula("thm3-1"), 30)
        record(f"thm3-1 {strategy} = 10 sqrt 5/pi^2", value.distance_bound(claimed) < mpq(1, 10 ** 28))
    with pytest.raises(ParameterError):
        eval_formula(get_formula("eq1"), 10, strategy="fast")


def test_numeric_identities(record):
    for formula_id in FORMULA_IDS:
        report = check_identity_numeric(get_formula(formula_id), DIGITS)
        record(f"{formula_id} at {DIGITS} digits", report.passed, f"residual < 1e{report.residual_bound_exponent}")
        record(f"{formula_id} conjectural flag", report.conjectural == (formula_id == "eq3"))
    with pytest.raises(ParameterError):
        check_identity_numeric(get_formula("eq1"), 9)


def test_corrupted_formulas_fail(record):
    formula = get_formula("thm3-1")
    report = check_identity_numeric(formula.with_quadratic((18, -10, -2)), 30)
    record("C = -2 fails", not report.passed)
    record("residual of order one", report.residual_bound_exponent is not None and report.residual_bound_exponent >= -1,
           report.residual_bound_exponent)
    report = check_identity_numeric(formula.with_claimed(ClaimedValue(S=11, d=5)), 30)
    record("wrong constant fails", not report.passed)


def test_extract_pi(record):
    reference = pi_reference(DIGITS)
    for formula_id in ("thm3-2", "eq2", "yang"):
        pi = extract_pi(get_formula(formula_id), DIGITS)
        record(f"pi from {formula_id}", pi.distance_bound(reference) < mpq(1, 10 ** (DIGITS - 5)), repr(pi))
    from_eq1 = extract_pi(get_formula("eq1"), DIGITS)
    from_eq3 = extract_pi(get_formula("eq3"), DIGITS)
    record("eq1 and eq3 agree", from_eq1.distance_bound(from_eq3) < mpq(1, 10 ** (DIGITS - 5)))


def test_formula_validation(record):
    with pytest.raises(ParameterError):
        RamanujanFormula(kernel=Kernel.YANG_B, quadratic=(0, 4, 1), x=mpq(1, 16), claimed=ClaimedValue(S=1))
    with pytest.raises(ParameterError):
        ClaimedValue(S=1, d=8)
    with pytest.raises(ParameterError):
        get_formula("eq4")
    record("catalog ids", list(CATALOG) == ["eq1", "eq2", "eq3", "yang", "thm3-1", "thm3-2"])


@pytest.mark.slow
def test_acceptance_numeric_suite(record):
    for formula_id in FORMULA_IDS:
        report = check_identity_numeric(get_formula(formula_id), 100)
        record(f"{formula_id} residual < 1e-95 at 100 digits", report.passed, report.residual_bound_exponent)
    pis = {fid: extract_pi(get_formula(fid), 100) for fid in FORMULA_IDS}
    ids = list(pis)
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            record(f"pi from {a} and {b} agree", pis[a].distance_bound(pis[b]) < mpq(1, 10 ** 95))
    for formula_id in FORMULA_IDS:
        formula = get_formula(formula_id)
        record(f"{formula_id} split = naive over [0, 200)", partial_sum(formula, 0, 200) == naive_sum(formula, 200))


@pytest.mark.slow
def test_acceptance_deep_run(record):
    formula = get_formula("thm3-2")
    value = eval_formula(formula, 1000)
    claimed = claimed_value(formula, 1000)
    record("thm3-2 at 1000 digits", value.distance_bound(claimed) < mpq(1, 10 ** 995))


@pytest.mark.slow
def test_acceptance_tail_soundness(record):
    for formula_id in FORMULA_IDS:
        formula = get_formula(formula_id)
        ok = True
        for N in range(0, 301, 25):
            bound = tail_bound(formula, N)
            ok = ok and all(abs(partial_sum(formula, N, N + k)) <= bound for k in (1, 10, 50, 100))
        record(f"{formula_id} tails within bound for N <= 300", ok)
