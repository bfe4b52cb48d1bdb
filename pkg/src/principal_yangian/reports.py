"""Verification reports shared by every suite."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact_arith import format_rational


def to_jsonable(x: Any) -> Any:
    """Exact values to JSON-ready data; rationals become "p/q" strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "value"):  # enums
        return x.value
    raise TypeError(f"cannot serialise {type(x).__name__}")


@dataclass
class Report:
    check: str
    params: dict = field(default_factory=dict)
    indices_tested: int = 0
    failures: list = field(default_factory=list)
    entries: list | None = None
    verdict: Any = None
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, index, residual=None) -> None:
        item = {"index": index}
        if residual is not None:
            item["residual"] = residual
        self.failures.append(item)

    def to_dict(self) -> dict:
        out: dict = {"check": self.check}
        out.update(self.params)
        out["indices_tested"] = self.indices_tested
        out["failures"] = self.failures
        if self.entries is not None:
            out["entries"] = self.entries
        if self.verdict is not None:
            out["verdict"] = self.verdict
        out.update(self.notes)
        out["passed"] = self.passed
        return to_jsonable(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)
