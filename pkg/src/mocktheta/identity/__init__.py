"""Expression language, evaluator, catalog and verifier."""

from __future__ import annotations

from .catalog import CATALOG, IdentityRecord, active_records, get, ids
from .evaluate import Evaluator, evaluate, required_order
from .expr import Expr, to_text
from .parser import parse
from .verify import Report, verify, verify_many

__all__ = [
    "CATALOG", "IdentityRecord", "active_records", "get", "ids",
    "Evaluator", "evaluate", "required_order",
    "Expr", "to_text", "parse",
    "Report", "verify", "verify_many",
]
