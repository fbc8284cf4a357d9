"""
Three-valued verdicts shared by the semantic and theory-level checks.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class Status(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a judgment together with whatever certifies it.

    `witness` names what the judgment failed on (a formula, a pair of
    formulas, a model index and world...). `certificate` is the object that
    proves the outcome: a proof term, a countermodel, or for HOLDS verdicts
    built from many sub-queries, the tuple of their certificates.
    """
    status: Status
    witness: Any = None
    certificate: Any = None
    detail: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def unknown(self) -> bool:
        return self.status is Status.UNKNOWN


def holds(certificate=None, detail=None) -> Verdict:
    return Verdict(Status.HOLDS, certificate=certificate, detail=detail)


def fails(witness=None, certificate=None, detail=None) -> Verdict:
    return Verdict(Status.FAILS, witness=witness, certificate=certificate, detail=detail)


def unknown(detail=None, witness=None) -> Verdict:
    return Verdict(Status.UNKNOWN, witness=witness, detail=detail)
