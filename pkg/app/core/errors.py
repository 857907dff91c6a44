"""
Exit-code mapping for domain errors raised by commands.
"""

from hypergeo.errors import (
    HypothesisError,
    IntegralityError,
    ParameterError,
    PrecisionError,
    VerificationError,
)

EXIT_SUCCESS = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2

# (exception type, exit code, short code used in logs and stderr)
_EXCEPTION_MAP = (
    (HypothesisError, EXIT_USAGE, "hypothesis_violation"),
    (ParameterError, EXIT_USAGE, "invalid_parameters"),
    (IntegralityError, EXIT_CHECK_FAILURE, "integrality_failure"),
    (PrecisionError, EXIT_CHECK_FAILURE, "precision_failure"),
    (VerificationError, EXIT_CHECK_FAILURE, "verification_error"),
)


def classify(exc: BaseException) -> tuple[int, str]:
    """Return (exit code, short code) for an exception raised by a command."""
    for exc_type, exit_code, code in _EXCEPTION_MAP:
        if isinstance(exc, exc_type):
            return exit_code, code
    return EXIT_CHECK_FAILURE, "internal_error"
