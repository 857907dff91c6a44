"""
Settings loading and exit-code classification
"""
import pytest
from pydantic import ValidationError

from app.core.config import CONFIG_ENV_VAR, get_cached_settings, reload_settings
from app.core.errors import EXIT_CHECK_FAILURE, EXIT_USAGE, classify
from hypergeo.errors import (
    HypothesisError,
    IntegralityError,
    ParameterError,
    PrecisionError,
    VerificationError,
)

__report_module__ = "config"


def test_settings_loaded_from_yaml(record):
    settings = get_cached_settings()
    record("app name", settings.app_name == "pisquared", settings.app_name)
    record("verify order >= 4", settings.verify_order >= 4, settings.verify_order)
    record("verify digits >= 10", settings.verify_digits >= 10, settings.verify_digits)
    record("log level normalised", settings.log_level.isupper(), settings.log_level)
    record("threads >= 1", settings.threads >= 1, settings.threads)


def test_env_overrides(monkeypatch, record):
    with monkeypatch.context() as m:
        m.setenv("PISQUARED_THREADS", "3")
        m.setenv("PISQUARED_SEED", "7")
        m.setenv("PISQUARED_LOG_LEVEL", "debug")
        overridden = reload_settings()
    reload_settings()
    record("threads from env", overridden.threads == 3, overridden.threads)
    record("seed from env", overridden.seed == 7, overridden.seed)
    record("log level from env", overridden.log_level == "DEBUG", overridden.log_level)


def test_missing_config_is_a_validation_error(monkeypatch, tmp_path, record):
    with monkeypatch.context() as m:
        m.setenv(CONFIG_ENV_VAR, str(tmp_path / "absent.yaml"))
        with pytest.raises(ValidationError):
            reload_settings()
    reload_settings()
    record("empty configuration rejected", True)


def test_unknown_log_level_rejected(monkeypatch, record):
    with monkeypatch.context() as m:
        m.setenv("PISQUARED_LOG_LEVEL", "chatty")
        with pytest.raises(ValidationError):
            reload_settings()
    reload_settings()
    record("log level validated", True)


def test_classify_exit_codes(record):
    cases = [
        (HypothesisError("|z| < 1"), (EXIT_USAGE, "hypothesis_violation")),
        (ParameterError("pole"), (EXIT_USAGE, "invalid_parameters")),
        (IntegralityError("u_n"), (EXIT_CHECK_FAILURE, "integrality_failure")),
        (PrecisionError("zero"), (EXIT_CHECK_FAILURE, "precision_failure")),
        (VerificationError("other"), (EXIT_CHECK_FAILURE, "verification_error")),
        (RuntimeError("boom"), (EXIT_CHECK_FAILURE, "internal_error")),
    ]
    for exc, expected in cases:
        got = classify(exc)
        record(f"classify {type(exc).__name__}", got == expected, f"got {got}")


def test_hypothesis_error_message(record):
    exc = HypothesisError("|z| < 1", "z = -2")
    record("hypothesis kept", exc.hypothesis == "|z| < 1")
    record("message", str(exc) == "hypothesis violated: |z| < 1 (z = -2)", str(exc))
    record("not a ValueError", not isinstance(exc, ValueError))
