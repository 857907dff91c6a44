"""
bench: naive vs binary-split timings as CSV.
"""

import argparse
import logging
import sys
import time

import pandas as pd

from app.core.config import Settings
from app.core.errors import EXIT_SUCCESS
from app.utils.arguments import int_at_least, int_list
from app.utils.checks import elapsed_ms
from hypergeo.catalog import FORMULA_IDS, get_formula
from hypergeo.hyper_eval import eval_formula, terms_for_digits

logger = logging.getLogger(__name__)

STRATEGIES = ("naive", "binary-split")
COLUMNS = ["formula", "digits", "strategy", "terms", "repeat", "elapsed_ms", "error_exponent"]


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("bench", help="Time naive and binary-split summation")
    p.add_argument("--formula", action="append", choices=FORMULA_IDS, default=None, help="Formula id; repeatable (default: all)")
    p.add_argument("--digits", type=int_list, default=[50, 100, 200], help="Comma-separated digit counts (default: 50,100,200)")
    p.add_argument("--repeat", type=int_at_least(1), default=1, help="Runs per configuration (default: 1)")
    p.add_argument("--threads", type=int_at_least(1), default=None, help="Threads for binary splitting (default: from config)")
    p.set_defaults(handler=run)


def build_table(formula_ids, digits_list, repeat: int, threads: int, settings: Settings) -> pd.DataFrame:
    rows = []
    for formula_id in formula_ids:
        formula = get_formula(formula_id)
        for digits in digits_list:
            terms = terms_for_digits(formula, digits, settings.guard_digits)
            for strategy in STRATEGIES:
                for r in range(repeat):
                    start = time.perf_counter()
                    value = eval_formula(
                        formula, digits, strategy=strategy, threads=threads, terms=terms,
                        guard_digits=settings.guard_digits, guard_bits=settings.guard_bits,
                    )
                    rows.append({
                        "formula": formula_id,
                        "digits": digits,
                        "strategy": strategy,
                        "terms": terms,
                        "repeat": r,
                        "elapsed_ms": elapsed_ms(start),
                        "error_exponent": value.error_exponent(),
                    })
            logger.debug("bench %s at %d digits done", formula_id, digits)
    return pd.DataFrame(rows, columns=COLUMNS)


def run(args: argparse.Namespace, settings: Settings) -> int:
    threads = args.threads if args.threads is not None else settings.threads
    table = build_table(args.formula or list(FORMULA_IDS), args.digits, args.repeat, threads, settings)
    table.to_csv(sys.stdout, index=False)
    return EXIT_SUCCESS
