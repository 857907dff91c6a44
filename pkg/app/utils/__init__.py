"""
Command-line helpers: argparse types and the check runner.
"""
