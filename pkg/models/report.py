# models/report.py
from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel


class ReportHeader(BaseModel):
    generated_at: datetime
    wall_time_secs: float
    version: str = "0.1.0"


class RunReport(BaseModel):
    """Deterministic body of a command's output; timing lives in the header."""

    command: str
    input_digest: str
    seed: Optional[int] = None
    outcome: str
    exit_code: int = 0
    summary: Dict[str, Any] = {}
    counts: Dict[str, int] = {}
    details: List[Dict[str, Any]] = []


class ReportEnvelope(BaseModel):
    header: ReportHeader
    body: RunReport
