# Subcommand modules; each exposes register(subparsers) and run(args, settings)
from . import bench, derive, digits, seq, verify

COMMANDS = (verify, digits, derive, seq, bench)

__all__ = ["COMMANDS", "bench", "derive", "digits", "seq", "verify"]
