import os
import sys
import json
import time
import platform
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List

import gmpy2
import pytest
from dotenv import load_dotenv

# Project root on sys.path so `import app` / `import hypergeo` resolve from any CWD
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

for env_file in (PROJECT_ROOT / ".env", PROJECT_ROOT / "tests" / "test.env"):
    if env_file.exists():
        load_dotenv(env_file, override=False)
        break

os.environ.setdefault("PISQUARED_CONFIG_FILE", str(PROJECT_ROOT / "config" / "pisquared-config.yaml"))

from app.core.config import get_cached_settings  # noqa: E402
from app.cli import main as cli_main  # noqa: E402

settings = get_cached_settings()

REPORTS_DIR = PROJECT_ROOT / "tests" / "reports"
USE_COLOR = os.getenv("TEST_REPORT_COLOR") == "1"
_ANSI = {"pass": "\x1b[32m", "fail": "\x1b[31m", "head": "\x1b[1m\x1b[36m", "reset": "\x1b[0m"}


def _paint(kind: str, text: str) -> str:
    return f"{_ANSI[kind]}{text}{_ANSI['reset']}" if USE_COLOR else text


def _environment() -> Dict[str, str]:
    return {
        "python": platform.python_version(),
        "platform": platform.platform(),
        "gmpy2": gmpy2.version(),
        "mpir": gmpy2.mp_version(),
    }


def _summary(results: List[Dict[str, Any]]) -> Dict[str, Any]:
    total = len(results)
    passed = sum(1 for r in results if r["passed"])
    return {
        "total": total,
        "passed": passed,
        "failed": total - passed,
        "success_rate": (passed / total * 100.0) if total else 0.0,
    }


def _write_text_report(path: Path, module_name: str, generated: datetime, results: List[Dict[str, Any]]) -> None:
    summary = _summary(results)
    env = _environment()
    lines = [
        _paint("head", f"Verbose Report for {module_name} tests"),
        f"Generated (UTC): {generated.isoformat()}",
        f"App: {settings.app_name} v{settings.app_version}",
        f"Environment: Python {env['python']} | gmpy2 {env['gmpy2']} ({env['mpir']}) | {env['platform']}",
        "Total: {total}  Passed: {passed}  Failed: {failed}  Success: {success_rate:.1f}%".format(**summary),
        "=" * 80,
        "",
    ]
    for idx, r in enumerate(results, start=1):
        status = _paint("pass", "PASS") if r["passed"] else _paint("fail", "FAIL")
        lines.append(f"[{idx:02d}] Check: {r['name']}")
        lines.append(f"     Status : {status}")
        if r.get("duration_ms") is not None:
            lines.append(f"     Duration: {r['duration_ms']:.2f} ms")
        if r["details"]:
            lines.append(f"     Details : {r['details']}")
        lines.append("-" * 80)
    failures = [r for r in results if not r["passed"]]
    if failures:
        lines.append("")
        lines.append("Failed Checks:")
        lines.extend(f" - {r['name']}: {r['details']}" for r in failures)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json_report(path: Path, module_name: str, generated: datetime, results: List[Dict[str, Any]]) -> None:
    document = {
        "module": module_name,
        "generated_utc": generated.isoformat(),
        "app": {"name": settings.app_name, "version": settings.app_version},
        "environment": _environment(),
        "summary": _summary(results),
        "results": results,
    }
    path.write_text(json.dumps(document, indent=2), encoding="utf-8")


# -----------------------------
# CLI runner
# -----------------------------
@pytest.fixture()
def run_cli(capsys):
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    def _run(*argv: str):
        try:
            code = cli_main(list(argv))
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture(autouse=True)
def _timer(request):
    start = time.perf_counter()
    yield
    setattr(request.node, "_duration_ms", (time.perf_counter() - start) * 1000.0)


# -----------------------------
# Report collector
# -----------------------------
@pytest.fixture(scope="module")
def report_collector(request):
    results: List[Dict[str, Any]] = []
    yield results
    if not results:
        return
    REPORTS_DIR.mkdir(parents=True, exist_ok=True)
    module_name = getattr(request.module, "__report_module__", request.module.__name__)
    generated = datetime.now(timezone.utc)
    stem = REPORTS_DIR / f"{module_name}_{generated.strftime('%Y%m%d_%H%M%S')}"
    _write_text_report(stem.with_suffix(".txt"), module_name, generated, results)
    _write_json_report(stem.with_suffix(".json"), module_name, generated, results)


@pytest.fixture
def record(report_collector, request):
    """record(name, passed, details): log one named check into the module report, then assert it."""
    def _rec(name: str, passed: bool, details: Any = ""):
        report_collector.append({
            "name": name,
            "passed": bool(passed),
            "details": str(details),
            "duration_ms": getattr(request.node, "_duration_ms", None),
        })
        assert passed, details
    return _rec
