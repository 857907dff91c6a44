"""
verify: the exact and numeric identity battery, reported as JSON.
"""

import argparse
import logging
import time
from functools import partial
from typing import Any, Dict, Iterator, List, Tuple

from gmpy2 import mpq, mpz

from app.core.config import Settings
from app.core.errors import EXIT_CHECK_FAILURE, EXIT_SUCCESS
from app.schemas.reports import Report
from app.utils.arguments import int_at_least
from app.utils.checks import CheckFn, elapsed_ms, run_checks
from hypergeo.bigfloat import decimal_exponent
from hypergeo.catalog import CATALOG
from hypergeo.hyper_eval import check_identity_numeric, extract_pi, pi_reference
from hypergeo.sequences import (
    U_BIG_RECURRENCE,
    U_SMALL_RECURRENCE,
    A_seq,
    B_seq,
    U_seq,
    check_recurrence,
    u_seq,
)
from hypergeo.transforms import (
    Identity,
    pfaff_saalschutz_forms,
    sample_parameters,
    sample_saalschutz,
    verify_theta_weights,
    verify_transform,
)

logger = logging.getLogger(__name__)

SUITES = ("exact", "numeric", "all")
MONOTONE_NMAX = 200

Check = Tuple[str, CheckFn]


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("verify", help="Run the identity verification battery")
    p.add_argument("--suite", choices=SUITES, default="all", help="Which checks to run (default: all)")
    p.add_argument("--order", type=int_at_least(4), default=None, help="Truncation order for exact checks (default: from config)")
    p.add_argument("--digits", type=int_at_least(10), default=None, help="Working digits for numeric checks (default: from config)")
    p.add_argument("--seed", type=int, default=None, help="Seed for random parameters (default: from config)")
    p.add_argument("--threads", type=int_at_least(1), default=None, help="Threads for binary splitting (default: from config)")
    p.add_argument("--progress", action="store_true", help="Show a progress bar on stderr")
    p.set_defaults(handler=run)


# =============================================================================
# Exact suite
# =============================================================================

def _transform_check(identity: Identity, params: Tuple[Any, ...], order: int) -> Tuple[bool, Dict[str, Any]]:
    report = verify_transform(identity, params, order)
    return report.equal, report.model_dump(mode="json", exclude={"equal"})


def _saalschutz_check(samples: List[Tuple[Any, Any, Any, int]]) -> Tuple[bool, Dict[str, Any]]:
    both_forms = True
    for a, d, e, n in samples:
        forms = pfaff_saalschutz_forms(a, d, e, n)
        both_forms = both_forms and forms.both_forms
        if not forms.holds:
            return False, {"samples": len(samples), "first_failure": [str(a), str(d), str(e), n]}
    return True, {"samples": len(samples), "both_forms": both_forms}


def _theta_weights_check(order: int, seed: int) -> Tuple[bool, Dict[str, Any]]:
    report = verify_theta_weights(order, seed)
    return report.first_order_equal and report.second_order_equal, report.model_dump(mode="json")


def _first_difference(left: List[Any], right: List[Any]) -> Any:
    return next((n for n, (x, y) in enumerate(zip(left, right)) if x != y), None)


def _u_forms_check(nmax: int) -> Tuple[bool, Dict[str, Any]]:
    convolution = u_seq(nmax, "convolution")
    quarters = u_seq(nmax, "quarters")
    recurrence = u_seq(nmax, "recurrence")
    mismatch = _first_difference(convolution, quarters)
    if mismatch is None:
        mismatch = _first_difference(convolution, recurrence)
    return mismatch is None, {"nmax": nmax, "first_mismatch": mismatch}


def _U_forms_check(nmax: int) -> Tuple[bool, Dict[str, Any]]:
    direct = U_seq(nmax, "direct")
    rescale = U_seq(nmax, "rescale")
    recurrence = U_seq(nmax, "recurrence")
    mismatch = _first_difference(direct, rescale)
    if mismatch is None:
        mismatch = _first_difference(direct, recurrence)
    positive = all(v > 0 for v in direct)
    head = direct[:3] == [1, 40, 2008][: len(direct[:3])]
    return mismatch is None and positive and head, {
        "nmax": nmax, "first_mismatch": mismatch, "positive": positive, "head": [str(v) for v in direct[:3]],
    }


def _recurrence_check(which: str, nmax: int) -> Tuple[bool, Dict[str, Any]]:
    if which == "u":
        seq, rec = u_seq(nmax, "convolution"), U_SMALL_RECURRENCE
    else:
        seq, rec = U_seq(nmax, "direct"), U_BIG_RECURRENCE
    report = check_recurrence(seq, rec, 1, nmax - 1)
    return report.holds, report.model_dump(mode="json", exclude={"holds"})


def _monotone_check(which: str, nmax: int) -> Tuple[bool, Dict[str, Any]]:
    values = A_seq(nmax) if which == "A" else B_seq(nmax)
    positive = all(v > 0 for v in values)
    increasing = all(values[n] < values[n + 1] for n in range(1, nmax))
    return positive and increasing, {"nmax": nmax, "positive": positive, "increasing": increasing}


def exact_checks(order: int, settings: Settings, seed: int) -> Iterator[Check]:
    samples = (
        (Identity.GAUSS, settings.gauss_samples),
        (Identity.WHIPPLE, settings.whipple_samples),
        (Identity.THEOREM1, settings.theorem1_samples),
    )
    for identity, count in samples:
        for i, params in enumerate(sample_parameters(identity, count, seed, settings.max_denominator)):
            yield f"{identity.value}[{i}]", partial(_transform_check, identity, params, order)
            if identity is Identity.THEOREM1:
                yield f"orr[{i}]", partial(_transform_check, Identity.ORR, params, order)
                yield f"reduction[{i}]", partial(_transform_check, Identity.REDUCTION, params, order)

    yield "theorem2", partial(_transform_check, Identity.THEOREM2, (), order)
    yield "eq10", partial(_transform_check, Identity.EQ10, (), order)

    saal = sample_saalschutz(settings.saalschutz_samples, seed, settings.saalschutz_max_n, settings.max_denominator)
    yield "pfaff_saalschutz", partial(_saalschutz_check, saal)
    yield "theta_weights", partial(_theta_weights_check, order, seed)

    nmax = settings.sequence_nmax
    yield "u_forms", partial(_u_forms_check, nmax)
    yield "U_forms", partial(_U_forms_check, nmax)
    yield "u_recurrence", partial(_recurrence_check, "u", nmax)
    yield "U_recurrence", partial(_recurrence_check, "U", nmax)
    yield "A_monotone", partial(_monotone_check, "A", MONOTONE_NMAX)
    yield "B_monotone", partial(_monotone_check, "B", MONOTONE_NMAX)


# =============================================================================
# Numeric suite
# =============================================================================

def _numeric_check(formula_id: str, digits: int, threads: int, guard_digits: int, guard_bits: int) -> Tuple[bool, Dict[str, Any]]:
    report = check_identity_numeric(CATALOG[formula_id], digits, threads, guard_digits, guard_bits)
    detail = report.model_dump(mode="json", exclude={"passed", "formula"})
    if report.conjectural:
        detail["note"] = "conjectural in source"
    return report.passed, detail


def _oracle_check(digits: int, guard_digits: int, guard_bits: int) -> Tuple[bool, Dict[str, Any]]:
    machin = pi_reference(digits, "machin", guard_digits, guard_bits)
    gauss = pi_reference(digits, "gauss", guard_digits, guard_bits)
    bound = machin.distance_bound(gauss)
    return bound < mpq(100, mpz(10) ** digits), {"residual_bound_exponent": decimal_exponent(bound)}


def _extract_check(formula_id: str, digits: int, threads: int, guard_digits: int, guard_bits: int) -> Tuple[bool, Dict[str, Any]]:
    pi = extract_pi(CATALOG[formula_id], digits, threads, guard_digits, guard_bits)
    reference = pi_reference(digits, guard_digits=guard_digits, guard_bits=guard_bits)
    bound = pi.distance_bound(reference)
    return bound < mpq(mpz(10) ** 5, mpz(10) ** digits), {"residual_bound_exponent": decimal_exponent(bound)}


def numeric_checks(digits: int, threads: int, settings: Settings) -> Iterator[Check]:
    guard = (settings.guard_digits, settings.guard_bits)
    yield "pi_oracles", partial(_oracle_check, digits, *guard)
    for formula_id in CATALOG:
        yield f"numeric[{formula_id}]", partial(_numeric_check, formula_id, digits, threads, *guard)
    for formula_id in CATALOG:
        yield f"extract_pi[{formula_id}]", partial(_extract_check, formula_id, digits, threads, *guard)


# =============================================================================
# Handler
# =============================================================================

def run(args: argparse.Namespace, settings: Settings) -> int:
    order = args.order if args.order is not None else settings.verify_order
    digits = args.digits if args.digits is not None else settings.verify_digits
    seed = args.seed if args.seed is not None else settings.seed
    threads = args.threads if args.threads is not None else settings.threads

    report = Report(command=args.command_line, version=settings.app_version)
    start = time.perf_counter()
    logger.info("verify suite=%s order=%d digits=%d seed=%d", args.suite, order, digits, seed)

    checks: List[Check] = []
    if args.suite in ("exact", "all"):
        checks.extend(exact_checks(order, settings, seed))
    if args.suite in ("numeric", "all"):
        checks.extend(numeric_checks(digits, threads, settings))
    run_checks(report, checks, progress=args.progress or settings.progress)

    report.elapsed_ms = elapsed_ms(start)
    print(report.to_json())
    failed = len(report.failures)
    logger.info("verify finished: %d checks, %d failed", len(report.checks), failed)
    return EXIT_SUCCESS if failed == 0 else EXIT_CHECK_FAILURE
