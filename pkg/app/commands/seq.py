"""
seq: dump u_n, U_n, A_n or B_n as JSON lines.
"""

import argparse
import json

from app.core.config import Settings
from app.core.errors import EXIT_SUCCESS
from app.utils.arguments import int_at_least
from hypergeo.sequences import A_seq, B_seq, U_seq, u_seq

DEFAULT_METHODS = {"u": "convolution", "U": "direct"}


def register(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("seq", help="Print sequence values as JSON lines")
    p.add_argument("--name", required=True, choices=("u", "U", "A", "B"), help="Sequence to print")
    p.add_argument("--nmax", required=True, type=int_at_least(0), help="Last index to print")
    p.add_argument("--method", default=None, help="Construction for u (convolution|quarters|recurrence) or U (direct|recurrence|rescale)")
    p.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: Settings) -> int:
    method = args.method or DEFAULT_METHODS.get(args.name)
    if args.name == "u":
        values = u_seq(args.nmax, method)
    elif args.name == "U":
        values = U_seq(args.nmax, method)
    elif args.name == "A":
        values = A_seq(args.nmax)
    else:
        values = B_seq(args.nmax)

    for n, value in enumerate(values):
        print(json.dumps({"name": args.name, "n": n, "value": str(value)}, sort_keys=True))
    return EXIT_SUCCESS
