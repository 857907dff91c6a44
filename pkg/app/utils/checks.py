"""
Check execution utilities.

A check is a callable returning (passed, detail). The runner times it,
turns domain errors into failed records and appends the record to a Report.
"""

import logging
import time
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

from tqdm import tqdm

from app.schemas.reports import CheckRecord, Report
from hypergeo.errors import VerificationError

logger = logging.getLogger(__name__)

CheckFn = Callable[[], Tuple[bool, Dict[str, Any]]]


# =============================================================================
# Timing
# =============================================================================

def elapsed_ms(start: float) -> float:
    """Milliseconds since ``start`` (a time.perf_counter() value), rounded to µs."""
    return round((time.perf_counter() - start) * 1000.0, 3)


# =============================================================================
# Check runner
# =============================================================================

def run_check(report: Report, name: str, check: CheckFn) -> CheckRecord:
    """
    Run one check and append its record to the report.

    Args:
        report: Report collecting the records
        name: Stable check name (appears in the JSON report)
        check: Callable returning (passed, detail)

    Returns:
        The appended CheckRecord
    """
    start = time.perf_counter()
    try:
        passed, detail = check()
    except VerificationError as exc:
        logger.warning("check %s raised %s: %s", name, type(exc).__name__, exc)
        passed, detail = False, {"error": type(exc).__name__, "message": str(exc)}

    record = CheckRecord(
        name=name,
        status="pass" if passed else "fail",
        detail=detail,
        elapsed_ms=elapsed_ms(start),
    )
    report.checks.append(record)
    if passed:
        logger.info("✓ %s (%.1f ms)", name, record.elapsed_ms)
    else:
        logger.warning("✗ %s: %s", name, detail)
    return record


def run_checks(
    report: Report,
    checks: Iterable[Tuple[str, CheckFn]],
    progress: bool = False,
    total: Optional[int] = None,
) -> Report:
    """Run a battery of named checks in order, optionally under a progress bar on stderr."""
    items = list(checks)
    iterator = tqdm(items, total=total or len(items), desc=report.command, unit="check", leave=False) if progress else items
    for name, check in iterator:
        run_check(report, name, check)
    return report
