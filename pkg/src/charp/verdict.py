"""Three-valued membership verdicts with certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

IN, OUT, UNKNOWN = "IN", "OUT", "UNKNOWN"

__all__ = ["Verdict", "IN", "OUT", "UNKNOWN", "combine"]


@dataclass
class Verdict:
    status: str
    certificate: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (IN, OUT, UNKNOWN):
            raise ValueError(f"bad verdict status {self.status!r}")

    @property
    def is_in(self) -> bool:
        return self.status == IN

    @property
    def is_out(self) -> bool:
        return self.status == OUT

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": self.certificate, "params": self.params}


def combine(verdicts) -> str:
    """Status of a conjunction: all IN -> IN, any OUT -> OUT, else UNKNOWN."""
    verdicts = list(verdicts)
    if any(v.is_out for v in verdicts):
        return OUT
    if all(v.is_in for v in verdicts):
        return IN
    return UNKNOWN
