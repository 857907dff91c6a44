"""
derive: turn a 5F4 evaluation for 1/pi^2 into an integral U_n series.
"""

import argparse
import logging

from app.core.config import Settings
from app.core.errors import EXIT_CHECK_FAILURE, EXIT_SUCCESS
from app.utils.arguments import int_at_least, int_triple, rational
from hypergeo.derivation import GuilleraInput, derive_ramanujan
from hypergeo.hyper_eval import check_identity_numeric

logger = logging.getLogger(__name__)

NEGATIVE_VALUE_FLAGS = ("--alpha", "--z", "--rhs")


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("derive", help="Derive a U_n series from a known 5F4 evaluation")
    p.add_argument("--alpha", required=True, type=int_triple, help="a2,a1,a0 of the quadratic a2 n^2 + a1 n + a0")
    p.add_argument("--z", required=True, type=rational, help="Argument z0 as p/q; must be negative so that the base M is positive")
    p.add_argument("--rhs", required=True, type=rational, help="R in  sum ... = R/pi^2, as p/q")
    p.add_argument("--check", type=int_at_least(10), default=None, metavar="D", help="Also check the derived series numerically at D digits")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    derived = derive_ramanujan(GuilleraInput(alpha=args.alpha, z0=args.z, rhs=args.rhs))
    print(derived.render())
    if args.check is None:
        return EXIT_SUCCESS

    report = check_identity_numeric(
        derived.to_formula("derived"),
        args.check,
        threads=settings.threads,
        guard_digits=settings.guard_digits,
        guard_bits=settings.guard_bits,
    )
    status = "pass" if report.passed else "fail"
    print(f"check = {status} (residual < 1e{report.residual_bound_exponent}, {report.terms} terms)")
    return EXIT_SUCCESS if report.passed else EXIT_CHECK_FAILURE
