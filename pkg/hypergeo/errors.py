"""
Exception hierarchy for the computational package.

These deliberately do not derive from ValueError: pydantic only wraps
ValueError/AssertionError raised inside validators, so domain errors raised
while a schema is being built reach the caller unchanged.
"""


class VerificationError(Exception):
    """Base class for all domain errors."""


class ParameterError(VerificationError):
    """Invalid parameters: poles, bad constant terms, ranges out of bounds."""


class HypothesisError(VerificationError):
    """A hypothesis of the series transformation theorem is violated."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        message = f"hypothesis violated: {hypothesis}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class IntegralityError(VerificationError):
    """An exactness assertion failed (expected an integer, got a fraction)."""


class PrecisionError(VerificationError):
    """A rigorous big-float operation cannot be carried out at this precision."""
