"""
digits: evaluate one catalog series to D significant digits.
"""

import argparse
import logging
import time

from app.core.config import Settings
from app.core.errors import EXIT_SUCCESS
from app.utils.arguments import int_at_least
from app.utils.checks import elapsed_ms
from hypergeo.catalog import FORMULA_IDS, get_formula
from hypergeo.hyper_eval import eval_formula, extract_pi, terms_for_digits

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("digits", help="Compute a catalog series to D digits")
    p.add_argument("--formula", required=True, choices=FORMULA_IDS, help="Catalog formula id")
    p.add_argument("--digits", required=True, type=int_at_least(1), help="Significant digits to print")
    p.add_argument("--strategy", choices=("naive", "binary-split"), default="binary-split", help="Summation strategy (default: binary-split)")
    p.add_argument("--as-pi", action="store_true", help="Also print pi extracted from the series")
    p.add_argument("--threads", type=int_at_least(1), default=None, help="Threads for binary splitting (default: from config)")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    formula = get_formula(args.formula)
    logger.info("%s: %s", formula.name, formula.render())
    threads = args.threads if args.threads is not None else settings.threads
    guard = dict(guard_digits=settings.guard_digits, guard_bits=settings.guard_bits)

    start = time.perf_counter()
    terms = terms_for_digits(formula, args.digits, settings.guard_digits)
    value = eval_formula(formula, args.digits, strategy=args.strategy, threads=threads, terms=terms, **guard)
    elapsed = elapsed_ms(start)
    logger.info("%s to %d digits with %s in %.1f ms", formula.name, args.digits, args.strategy, elapsed)

    print(f"{formula.name} = {value.to_decimal(args.digits)}")
    print(f"error_bound = 1e{value.error_exponent()}")
    print(f"terms = {terms}")
    print(f"elapsed_ms = {elapsed}")
    if args.as_pi:
        pi = extract_pi(formula, args.digits, threads=threads, **guard)
        print(f"pi = {pi.to_decimal(args.digits)}")
    return EXIT_SUCCESS
