"""Bound-verification reports shared by every checker."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
UNDETERMINED = "undetermined"


@dataclass
class BoundReport:
    """Outcome of a single bound verification.

    A ``fail`` report always carries a witness point; a ``pass`` report
    always carries the fitted constants and the grid/sample budgets that
    produced them.  ``undetermined`` is the explicit "ran out of budget"
    status -- never a silent guess.
    """

    check_id: str
    status: str
    constants: dict[str, float] = field(default_factory=dict)
    witness: Optional[dict[str, Any]] = None
    budgets: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, UNDETERMINED):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            raise ValueError("fail report requires a witness")
        if self.status == PASS and not self.budgets:
            raise ValueError("pass report requires budgets")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "status": self.status,
            "constants": _jsonable(self.constants),
            "witness": _jsonable(self.witness),
            "budgets": _jsonable(self.budgets),
            "warnings": list(self.warnings),
            "notes": _jsonable(self.notes),
        }

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("sort_keys", True)
        return json.dumps(self.to_dict(), **kwargs)


def _jsonable(obj):
    """Recursively convert numpy scalars/arrays and infinities for JSON."""
    import numpy as np

    if obj is None:
        return None
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, complex):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    return obj
