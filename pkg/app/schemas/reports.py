# Verification report schemas
from __future__ import annotations

import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

CheckStatus = Literal["pass", "fail"]


class CheckRecord(BaseModel):
    """Outcome of a single named check"""
    name: str
    status: CheckStatus
    detail: Dict[str, Any] = Field(default_factory=dict)
    elapsed_ms: Optional[float] = None


class Report(BaseModel):
    """Machine-readable result of a CLI command"""
    command: str
    version: str
    checks: List[CheckRecord] = Field(default_factory=list)
    elapsed_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(check.status == "pass" for check in self.checks)

    @property
    def failures(self) -> List[CheckRecord]:
        return [check for check in self.checks if check.status != "pass"]

    def to_json(self) -> str:
        """Key-ordered JSON; identical inputs give identical text apart from timings."""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2)
