from __future__ import annotations

from dataclasses import dataclass, field

VERDICTS = ("pass", "fail", "evidence-only")


@dataclass
class CheckReport:
    """Outcome of one verified claim.

    ``witnesses`` hold plain JSON-able dicts whose element fields are DSL
    strings, so a report can be re-parsed and every witness re-multiplied.
    Claims that quantify over the whole (infinite) ring can only ever reach
    ``evidence-only``; ``pass``/``fail`` are reserved for constructive facts.
    """

    claim_id: str
    verdict: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        return {
            "claim": self.claim_id,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "details": dict(self.details),
        }
