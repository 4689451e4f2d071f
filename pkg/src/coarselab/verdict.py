"""Three-valued verdicts with mandatory evidence.

Semi-decidable questions on infinite sets can only be answered up to a
scale budget.  A verdict is therefore Yes, No, or Unknown; Yes and No
always carry a witness payload that can be re-checked independently,
and Unknown always records the budget that was exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class TriVerdict:
    """Outcome of a possibly scale-bounded decision procedure."""

    outcome: str
    witness: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.outcome not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad outcome: {self.outcome!r}")
        if self.outcome == UNKNOWN and "budget" not in self.witness:
            raise ValueError("unknown verdict must record the exhausted budget")

    @classmethod
    def yes(cls, **witness: Any) -> "TriVerdict":
        return cls(YES, witness)

    @classmethod
    def no(cls, **witness: Any) -> "TriVerdict":
        return cls(NO, witness)

    @classmethod
    def unknown(cls, budget: Any, **extra: Any) -> "TriVerdict":
        return cls(UNKNOWN, {"budget": budget, **extra})

    @property
    def is_yes(self) -> bool:
        return self.outcome == YES

    @property
    def is_no(self) -> bool:
        return self.outcome == NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome == UNKNOWN

    def to_json(self) -> dict:
        return {"outcome": self.outcome, "witness": _jsonable(self.witness)}

    def __str__(self) -> str:
        if not self.witness:
            return self.outcome
        parts = ", ".join(f"{k}={v}" for k, v in sorted(self.witness.items()))
        return f"{self.outcome} ({parts})"


def _jsonable(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)
