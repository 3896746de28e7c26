"""Run catalog records and package the outcome as report entries."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from ..errors import MockThetaError
from ..qseries import Mismatch, ps_eq
from .catalog import IdentityRecord
from .evaluate import Evaluator


@dataclass(frozen=True)
class Report:
    id: str
    status: str  # pass | fail | error | gap
    order: int
    elapsed_ms: int
    mismatch: Optional[Mismatch] = None
    error_kind: Optional[str] = None
    message: str = ""

    def to_json(self) -> dict:
        mm = None
        if self.mismatch is not None:
            m = self.mismatch
            mm = {"exponent": m.exponent, "lhs": str(m.lhs), "rhs": str(m.rhs)}
        return {
            "id": self.id,
            "status": self.status,
            "order": self.order,
            "elapsed_ms": self.elapsed_ms,
            "mismatch": mm,
            "error_kind": self.error_kind,
        }


def verify(rec: IdentityRecord, order: Optional[int] = None, evaluator: Optional[Evaluator] = None) -> Report:
    """Compare both sides of ``rec`` coefficient by coefficient through ``order``."""
    order = rec.default_order if order is None else order
    if not rec.active:
        return Report(rec.id, "gap", order, 0, message=rec.note)
    ev = evaluator or Evaluator()
    start = time.perf_counter()
    try:
        lhs = ev.eval(rec.lhs, order)
        rhs = ev.eval(rec.rhs, order)
        mm = ps_eq(lhs, rhs, order)
    except MockThetaError as exc:
        ms = int((time.perf_counter() - start) * 1000)
        return Report(rec.id, "error", order, ms, error_kind=exc.kind, message=str(exc))
    ms = int((time.perf_counter() - start) * 1000)
    return Report(rec.id, "pass" if mm is None else "fail", order, ms, mismatch=mm)


def swapped(rec: IdentityRecord) -> IdentityRecord:
    return replace(rec, lhs=rec.rhs, rhs=rec.lhs)


def verify_many(
    records: Iterable[IdentityRecord],
    order: Optional[int] = None,
    jobs: int = 1,
) -> list[Report]:
    """Reports sorted by id; ``jobs > 1`` fans records out to a thread pool."""
    records = sorted(records, key=lambda r: r.id)
    ev = Evaluator()
    if jobs <= 1:
        reports = [verify(r, order, ev) for r in records]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda r: verify(r, order, ev), records))
    return sorted(reports, key=lambda r: r.id)
