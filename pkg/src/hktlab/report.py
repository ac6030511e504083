"""Structured pass/fail records for verified identities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
INDETERMINATE = "indeterminate"

EXACT = "exact"
SAMPLED = "sampled"
VACUOUS = "vacuous"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verified identity.

    ``mode`` records the strength of the verdict: "exact" for symbolic
    identities, "sampled" for point/vector sampling, "vacuous" when the
    identity holds for dimension reasons.  A fail verdict always carries
    a witness.
    """

    check: str
    verdict: str
    mode: str = EXACT
    witness: Optional[dict] = None
    details: Any = None

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, INDETERMINATE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.mode not in (EXACT, SAMPLED, VACUOUS):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a fail verdict requires a witness")

    @property
    def passed(self):
        return self.verdict == PASS

    def verdict_label(self):
        if self.verdict == PASS and self.mode == SAMPLED:
            return "pass (sampled)"
        if self.verdict == PASS and self.mode == VACUOUS:
            return "pass (vacuous)"
        return self.verdict

    def to_json_dict(self):
        return {
            "check": self.check,
            "verdict": self.verdict,
            "mode": self.mode,
            "witness": self.witness,
            "details": self.details,
        }


def passed_report(check, mode=EXACT, details=None):
    return CheckReport(check=check, verdict=PASS, mode=mode, details=details)


def failed_report(check, witness, mode=EXACT, details=None):
    return CheckReport(check=check, verdict=FAIL, mode=mode, witness=witness, details=details)
