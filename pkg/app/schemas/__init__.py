# Schema exports
from .reports import CheckRecord, CheckStatus, Report

__all__ = ["CheckRecord", "CheckStatus", "Report"]
